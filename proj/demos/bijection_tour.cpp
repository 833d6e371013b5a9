// Walks the hull bijection around the built-in jump pair: classify both,
// convexify the two-point map, recover it from the filled map, and show the
// quasicontinuity verdicts that separate the two.

#include <iostream>

#include "svmap/svmap.hpp"

namespace {

void show(const char* name, const svmap::PiecewiseMap& m) {
  svmap::ClassificationReport r = svmap::classify(m);
  std::cout << name << ":\n" << svmap::serialize_map(m);
  std::cout << "  usco=" << (r.is_usco ? "yes" : "no")
            << " minimal_usco=" << (r.is_minimal_usco ? "yes" : "no")
            << " cusco=" << (r.is_cusco ? "yes" : "no")
            << " minimal_cusco=" << (r.is_minimal_cusco ? "yes" : "no") << "\n";
  for (const svmap::Witness& w : r.witnesses)
    std::cout << "  witness x=" << svmap::fmt_num(w.x) << ": " << w.reason << "\n";
  std::cout << "\n";
}

}  // namespace

int main() {
  svmap::PiecewiseMap f = svmap::example("F21").map();
  svmap::PiecewiseMap g = svmap::example("G21").map();
  show("F21", f);
  show("G21", g);

  svmap::PiecewiseMap hull = svmap::phi(f);
  std::cout << "phi(F21) equals G21: "
            << (svmap::map_equal(hull, g, 1e-12) ? "yes" : "no") << "\n";
  svmap::PiecewiseMap back = svmap::phi_inverse(g);
  std::cout << "phi_inverse(G21) equals F21: "
            << (svmap::map_equal(back, f, 1e-12) ? "yes" : "no") << "\n\n";

  svmap::PiecewiseMap osc = svmap::example("sinrec").map();
  std::cout << "sinrec is *-qc at 0: "
            << (svmap::is_star_qc_at(osc, 0.0) ? "yes" : "no") << "\n";
  show("closure of sinrec", svmap::graph_closure(osc));

  svmap::PiecewiseMap top = svmap::selection(g, svmap::SelectionPolicy::Sup);
  std::cout << "sup-selection of G21 is *-qc at 0: "
            << (svmap::is_star_qc_at(top, 0.0) ? "yes" : "no") << "\n";
  return 0;
}
