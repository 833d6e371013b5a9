#pragma once

#include <algorithm>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "svmap/corpus.hpp"
#include "svmap/errors.hpp"
#include "svmap/format.hpp"
#include "svmap/map_io.hpp"
#include "svmap/metrics.hpp"
#include "svmap/piecewise_map.hpp"
#include "svmap/svg.hpp"

namespace svmap::cli {

namespace detail {

// Bad argument shapes and unreadable paths; reported as usage (exit 1).
struct UsageError {
  std::string msg;
};

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) return std::nullopt;
  return text;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError{"cannot write '" + path + "'"};
  out << content;
  out.flush();
  if (!out) throw UsageError{"cannot write '" + path + "'"};
}

// corpus:NAME[,n=K] resolved to a built-in; errors there are usage errors.
inline NamedExample resolve_corpus(const std::string& rest) {
  std::string name = rest;
  std::optional<int> n;
  if (std::size_t pos = rest.rfind(",n="); pos != std::string::npos) {
    name = rest.substr(0, pos);
    std::string digits = rest.substr(pos + 3);
    try {
      std::size_t used = 0;
      n = std::stoi(digits, &used);
      if (used != digits.size()) throw UsageError{"bad member index '" + digits + "'"};
    } catch (const std::exception&) {
      throw UsageError{"bad member index '" + digits + "'"};
    }
  }
  try {
    NamedExample ex = example(name);
    if (n) return {ex.name, ex.summary, ex.member(*n)};
    if (ex.is_family())
      throw UsageError{name + " is a family; use corpus:" + name + ",n=K"};
    return ex;
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

inline PiecewiseMap resolve_input(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0) return resolve_corpus(spec.substr(7)).map();
  std::optional<std::string> text = read_file(spec);
  if (!text) throw UsageError{"cannot open '" + spec + "'"};
  return parse_map(*text);
}

inline std::function<PiecewiseMap(int)> resolve_family(const std::string& spec) {
  if (spec.rfind("corpus:", 0) != 0)
    throw UsageError{"converge needs a corpus family such as corpus:Pn"};
  try {
    NamedExample ex = example(spec.substr(7));
    if (!ex.is_family()) throw UsageError{ex.name + " is not a family"};
    return std::get<std::function<PiecewiseMap(int)>>(ex.value);
  } catch (const std::invalid_argument& e) {
    throw UsageError{e.what()};
  }
}

inline MapMetric parse_metric(const std::string& s) {
  try {
    if (s == "uniform") return MapMetric::uniform();
    if (s == "graph") return MapMetric::graph_hausdorff();
    if (s.rfind("point:", 0) == 0) {
      std::vector<double> pts;
      std::string rest = s.substr(6);
      std::size_t start = 0;
      while (start <= rest.size()) {
        std::size_t comma = rest.find(',', start);
        if (comma == std::string::npos) comma = rest.size();
        pts.push_back(parse_const(std::string_view(rest).substr(start, comma - start)));
        start = comma + 1;
      }
      return MapMetric::pointwise(std::move(pts));
    }
    if (s.rfind("uc:", 0) == 0) {
      std::string rest = s.substr(3);
      std::size_t comma = rest.find(',');
      if (comma == std::string::npos)
        throw UsageError{"uc metric needs two bounds, as uc:u,v"};
      double u = parse_const(std::string_view(rest).substr(0, comma));
      double v = parse_const(std::string_view(rest).substr(comma + 1));
      return MapMetric::uniform_on(u, v);
    }
  } catch (const ParseError& e) {
    throw UsageError{"bad metric selector '" + s + "': " + e.what()};
  } catch (const std::invalid_argument& e) {
    throw UsageError{"bad metric selector '" + s + "': " + e.what()};
  }
  throw UsageError{"unknown metric '" + s +
                   "'; use point:x1,x2,... uc:u,v uniform graph"};
}

inline std::vector<int> parse_n_list(const std::string& s) {
  auto to_int = [](const std::string& t) {
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw UsageError{"bad index '" + t + "'"};
      return v;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError{"bad index '" + t + "'"};
    }
  };
  if (std::size_t dots = s.find(".."); dots != std::string::npos) {
    int lo = to_int(s.substr(0, dots));
    int hi = to_int(s.substr(dots + 2));
    if (lo > hi) throw UsageError{"empty range '" + s + "'"};
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    return ns;
  }
  std::vector<int> ns;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    ns.push_back(to_int(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return ns;
}

inline std::optional<Interval> parse_y_range(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw UsageError{"y-range needs two bounds, as lo,hi"};
  try {
    double lo = parse_const(std::string_view(s).substr(0, comma));
    double hi = parse_const(std::string_view(s).substr(comma + 1));
    if (!(lo < hi)) throw UsageError{"y-range needs lo < hi"};
    return Interval{lo, hi};
  } catch (const ParseError& e) {
    throw UsageError{"bad y-range '" + s + "': " + e.what()};
  }
}

inline const char* yn(bool b) { return b ? "yes" : "no"; }

inline std::string bracket_str(const Bracket& b) {
  return "[" + fmt_num(b.lo) + ", " + fmt_num(b.hi) + "]";
}

}  // namespace detail

// Runs one command against the given streams; returns the process exit code.
// 0 success, 1 usage or parse errors, 2 precondition violations (with
// witnesses), 3 violated internal invariants.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact set-valued map calculator"};
  app.name("svmap");
  app.require_subcommand(1);

  std::string cl_file;
  CLI::App* c_classify =
      app.add_subcommand("classify", "print the four classification flags");
  c_classify->add_option("file", cl_file, "map file or corpus:NAME[,n=K]")
      ->required();

  std::string ph_file, ph_out;
  CLI::App* c_phi =
      app.add_subcommand("phi", "fiberwise convex hull of a minimal usco");
  c_phi->add_option("file", ph_file, "map file or corpus:NAME[,n=K]")->required();
  c_phi->add_option("-o,--out", ph_out, "output map file")->required();

  std::string pi_file, pi_out;
  CLI::App* c_phi_inv = app.add_subcommand(
      "phi-inv", "extreme selection closure of a minimal cusco");
  c_phi_inv->add_option("file", pi_file, "map file or corpus:NAME[,n=K]")
      ->required();
  c_phi_inv->add_option("-o,--out", pi_out, "output map file")->required();

  std::string d_a, d_b, d_metric;
  double d_tol = 1e-6;
  CLI::App* c_dist = app.add_subcommand("dist", "distance bracket between two maps");
  c_dist->add_option("a", d_a, "map file or corpus:NAME[,n=K]")->required();
  c_dist->add_option("b", d_b, "map file or corpus:NAME[,n=K]")->required();
  c_dist->add_option("--metric", d_metric, "point:x1,... uc:u,v uniform graph")
      ->required();
  c_dist->add_option("--tol", d_tol, "bracket width bound");

  std::string cv_family, cv_limit, cv_metric, cv_ns;
  double cv_tol = 1e-6;
  CLI::App* c_conv =
      app.add_subcommand("converge", "check a family against its limit");
  c_conv->add_option("family", cv_family, "corpus family, such as corpus:Pn")
      ->required();
  c_conv->add_option("limit", cv_limit, "map file or corpus:NAME[,n=K]")->required();
  c_conv->add_option("--metric", cv_metric, "point:x1,... uc:u,v uniform graph")
      ->required();
  c_conv->add_option("--n", cv_ns, "members, as 1..50 or 1,2,5")->required();
  c_conv->add_option("--tol", cv_tol, "convergence threshold");

  CLI::App* c_corpus = app.add_subcommand("corpus", "built-in examples");
  c_corpus->require_subcommand(1);
  CLI::App* c_list = c_corpus->add_subcommand("list", "list the built-in names");
  std::string g_name, g_out;
  CLI::App* c_get = c_corpus->add_subcommand("get", "export a built-in map");
  c_get->add_option("name", g_name, "NAME[,n=K]")->required();
  c_get->add_option("-o,--out", g_out, "output map file (default stdout)");

  std::string pl_file, pl_out, pl_yrange;
  CLI::App* c_plot = app.add_subcommand("plot", "render a map as SVG");
  c_plot->add_option("file", pl_file, "map file or corpus:NAME[,n=K]")->required();
  c_plot->add_option("-o,--out", pl_out, "output SVG file")->required();
  c_plot->add_option("--y-range", pl_yrange, "vertical range, as lo,hi");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*c_classify) {
      ClassificationReport r = classify(detail::resolve_input(cl_file));
      out << "usco=" << detail::yn(r.is_usco)
          << " minimal_usco=" << detail::yn(r.is_minimal_usco)
          << " cusco=" << detail::yn(r.is_cusco)
          << " minimal_cusco=" << detail::yn(r.is_minimal_cusco) << "\n";
      for (const Witness& w : r.witnesses)
        out << "witness x=" << fmt_num(w.x) << ": " << w.reason << "\n";
      return 0;
    }
    if (*c_phi) {
      detail::write_file(ph_out, serialize_map(phi(detail::resolve_input(ph_file))));
      return 0;
    }
    if (*c_phi_inv) {
      detail::write_file(pi_out,
                         serialize_map(phi_inverse(detail::resolve_input(pi_file))));
      return 0;
    }
    if (*c_dist) {
      if (!(d_tol > 0.0)) throw detail::UsageError{"--tol must be positive"};
      Bracket d = distance(detail::resolve_input(d_a), detail::resolve_input(d_b),
                           detail::parse_metric(d_metric), d_tol);
      out << detail::bracket_str(d) << "\n";
      return 0;
    }
    if (*c_conv) {
      if (!(cv_tol > 0.0)) throw detail::UsageError{"--tol must be positive"};
      ConvergenceReport rep =
          converge(detail::resolve_family(cv_family), detail::resolve_input(cv_limit),
                   detail::parse_metric(cv_metric), detail::parse_n_list(cv_ns),
                   cv_tol);
      for (const ConvergenceRow& row : rep.rows)
        out << "n=" << row.n << " dist=" << detail::bracket_str(row.dist) << "\n";
      if (rep.converges)
        out << "verdict: converges\n";
      else
        out << "verdict: does not converge; strongest witness n=" << rep.witness_n
            << " with distance >= " << fmt_num(rep.witness_lo) << "\n";
      return 0;
    }
    if (*c_corpus) {
      if (*c_list) {
        for (const CorpusEntry& e : corpus_listing())
          out << e.name << (e.family ? " (family)" : "") << ": " << e.summary
              << "\n";
        return 0;
      }
      if (*c_get) {
        std::string text = serialize_map(detail::resolve_corpus(g_name).map());
        if (g_out.empty())
          out << text;
        else
          detail::write_file(g_out, text);
        return 0;
      }
    }
    if (*c_plot) {
      detail::write_file(pl_out, plot_svg(detail::resolve_input(pl_file),
                                          detail::parse_y_range(pl_yrange)));
      return 0;
    }
    err << "internal error: no subcommand dispatched\n";
    return 3;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.msg << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error at line " << e.line << ", col " << e.col << ": "
        << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    for (const Witness& w : e.witnesses)
      err << "  witness x=" << fmt_num(w.x) << ": " << w.reason << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace svmap::cli
