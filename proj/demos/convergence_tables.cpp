// Prints the two convergence tables behind the continuity counterexamples:
// the oscillator plugs close on the filled jump pointwise while their
// preimages stay one unit away from the two-point jump at the origin, and
// the ramps close on the filled jump in graph distance while staying far
// from the two-point jump.

#include <iostream>
#include <vector>

#include "svmap/svmap.hpp"

int main() {
  using svmap::Bracket;
  using svmap::fmt_num;

  svmap::PiecewiseMap f = svmap::example("F21").map();
  svmap::PiecewiseMap g = svmap::example("G21").map();
  svmap::NamedExample pn = svmap::example("Pn");
  svmap::NamedExample gn = svmap::example("gn");

  svmap::MapMetric pw = svmap::MapMetric::pointwise({-1.0, -0.3, 0.0, 0.3, 1.0});
  std::cout << "P_n against G21 (pointwise on {-1, -0.3, 0, 0.3, 1}) and the\n"
               "fiber gap of phi_inverse(P_n) from F21 at 0:\n";
  for (int n : {1, 2, 5, 10, 20}) {
    svmap::PiecewiseMap p = pn.member(n);
    Bracket d = svmap::distance(p, g, pw);
    double gap = svmap::fiber_distance(f, svmap::phi_inverse(p), 0.0);
    std::cout << "  n=" << n << " dist=[" << fmt_num(d.lo) << ", " << fmt_num(d.hi)
              << "] gap_at_0=" << fmt_num(gap) << "\n";
  }

  svmap::MapMetric graph = svmap::MapMetric::graph_hausdorff();
  std::cout << "\nramps g_n in graph distance, against G21 and against F21:\n";
  for (int n : {2, 5, 10, 25, 50}) {
    svmap::PiecewiseMap r = gn.member(n);
    Bracket to_g = svmap::distance(r, g, graph, 1e-3);
    Bracket to_f = svmap::distance(r, f, graph, 1e-3);
    std::cout << "  n=" << n << " to_G21=[" << fmt_num(to_g.lo) << ", "
              << fmt_num(to_g.hi) << "] to_F21=[" << fmt_num(to_f.lo) << ", "
              << fmt_num(to_f.hi) << "]\n";
  }

  svmap::ConvergenceReport rep =
      svmap::converge([&pn](int n) { return pn.member(n); }, g, pw,
                      {1, 2, 3, 4, 5}, 1e-6);
  std::cout << "\nconverge(P_n -> G21, pointwise): "
            << (rep.converges ? "converges" : "does not converge") << "\n";
  return 0;
}
