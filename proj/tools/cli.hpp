#pragma once

// lapgraph command line. `run` never calls exit(); it returns 0 on success,
// 1 on a domain or I/O error and 2 on a usage error.

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lapgraph/lapgraph.hpp"

namespace lapgraph::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kOracleTolerance = 1e-8;

namespace detail {

inline Json interval_pairs(const std::vector<Interval>& v) {
  Json a = Json::array();
  for (const auto& iv : v) a.push_back({iv.lower, iv.upper});
  return a;
}

inline Json theta_json(Theta t) { return Json::array({t.t1, t.t2}); }

inline CatalogParams parse_params(const std::vector<std::string>& raw) {
  CatalogParams p;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

inline void emit(std::ostream& out, const Json& j, const std::string& path) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_text(path, j.dump(2) + "\n");
  }
}

inline GrapheneAttach parse_attach(const std::string& s) {
  if (s == "edge") return GrapheneAttach::Edge;
  if (s == "loop" || s == "loop2") return GrapheneAttach::LoopV2;
  if (s == "loop1") return GrapheneAttach::LoopV1;
  throw UsageError("--attach must be edge, loop, loop1 or loop2, got '" + s + "'");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of discrete Laplacians on Z^2-periodic graphs", "lapgraph"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  int grid = kDefaultGrid;
  double tol = 1e-9;
  app.add_option("--threads", threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--grid", grid, "samples per torus direction")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "flat band tolerance")->check(CLI::PositiveNumber);

  std::string graph_path, out_path;

  auto* lattice = app.add_subcommand("lattice", "write a catalog graph");
  std::string lattice_name;
  std::vector<std::string> raw_params;
  lattice->add_option("name", lattice_name, "catalog name")->required();
  lattice->add_option("--param", raw_params, "family parameter key=value")->take_all();
  lattice->add_option("--out", out_path, "output graph file (stdout if omitted)");

  auto* perturb = app.add_subcommand("perturb", "add an edge to, or subdivide, a graph file");
  std::vector<long> add_edge_args;
  int subdivide = 0;
  perturb->add_option("--graph", graph_path)->required();
  auto* add_opt = perturb->add_option("--add-edge", add_edge_args, "tail head t1 t2")->expected(4);
  auto* sub_opt = perturb->add_option("--subdivide", subdivide, "extra vertices per edge");
  add_opt->excludes(sub_opt);
  perturb->add_option("--out", out_path);

  auto* bands = app.add_subcommand("bands", "sorted fiber eigenvalues on the grid, as CSV");
  bands->add_option("--graph", graph_path)->required();
  bands->add_option("--out", out_path, "CSV file (stdout if omitted)");

  auto* report_cmd = app.add_subcommand("report", "spectrum report document");
  bool refine = true;
  report_cmd->add_option("--graph", graph_path)->required();
  report_cmd->add_flag("--refine,!--no-refine", refine, "polish band endpoints (default on)");
  report_cmd->add_option("--out", out_path);

  auto* flat_cmd = app.add_subcommand("flatbands", "flat bands and their multiplicities");
  flat_cmd->add_option("--graph", graph_path)->required();

  auto* estimate_cmd = app.add_subcommand("estimate", "bridge estimate next to the computed measure");
  estimate_cmd->add_option("--graph", graph_path)->required();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare fibers with the finite torus quotient");
  int torus_n = 4;
  oracle_cmd->add_option("--graph", graph_path)->required();
  oracle_cmd->add_option("--N", torus_n, "torus size")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "closed-form analyses");
  analyze->require_subcommand(1);
  std::vector<long> tau;
  std::string attach = "loop";
  std::vector<long> d1, d2;
  std::vector<double> dirac_t;
  auto* a_square = analyze->add_subcommand("perturbed-square", "square lattice plus one loop");
  a_square->add_option("--tau", tau, "t1 t2")->expected(2)->required();
  auto* a_graphene = analyze->add_subcommand("graphene", "hexagonal lattice plus one edge");
  a_graphene->add_option("--tau", tau, "t1 t2")->expected(2)->required();
  a_graphene->add_option("--attach", attach, "edge | loop | loop1 | loop2");
  auto* a_kagome = analyze->add_subcommand("kagome", "Kagome closed form");
  auto* a_two = analyze->add_subcommand("two-vertex", "two-vertex product graph gap");
  a_two->add_option("--d1", d1, "index set")->required()->delimiter(',');
  a_two->add_option("--d2", d2, "index set")->required()->delimiter(',');
  auto* a_three = analyze->add_subcommand("three-vertex", "bipartite three-vertex graph");
  a_three->add_option("--graph", graph_path)->required();
  auto* a_dirac = analyze->add_subcommand("dirac", "Dirac cone residual of the hexagonal lattice");
  a_dirac->add_option("--t", dirac_t, "t1 t2")->expected(2)->required();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lapgraph: " << e.what() << '\n';
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    return 2;
  }

  SpectrumOptions opt;
  opt.grid_n = grid;
  opt.flat_tol = tol;
  opt.threads = threads;
  ScanOptions scan;
  scan.grid_n = grid;
  scan.threads = threads;

  try {
    if (*lattice) {
      FundamentalGraph g = catalog(lattice_name, detail::parse_params(raw_params));
      detail::emit(out, to_json(g), out_path);
    } else if (*perturb) {
      if (add_edge_args.empty() && perturb->count("--subdivide") == 0) {
        throw UsageError("perturb needs --add-edge or --subdivide");
      }
      const FundamentalGraph g = load_graph(graph_path);
      const FundamentalGraph h =
          add_edge_args.empty()
              ? subdivide_all_edges(g, subdivide)
              : add_edge(g, static_cast<int>(add_edge_args[0]), static_cast<int>(add_edge_args[1]),
                         {add_edge_args[2], add_edge_args[3]});
      detail::emit(out, to_json(h), out_path);
    } else if (*bands) {
      const FundamentalGraph g = load_graph(graph_path);
      if (out_path.empty()) {
        write_bands_csv(out, g, grid, threads);
      } else {
        std::ostringstream csv;
        write_bands_csv(csv, g, grid, threads);
        write_text(out_path, csv.str());
      }
    } else if (*report_cmd) {
      const FundamentalGraph g = load_graph(graph_path);
      opt.refine = refine;
      detail::emit(out, report_document(report(g, opt)), out_path);
    } else if (*flat_cmd) {
      const FundamentalGraph g = load_graph(graph_path);
      Json flats = Json::array();
      for (const auto& f : flat_bands(g, grid, tol, opt)) {
        flats.push_back({{"value", f.value}, {"multiplicity", f.multiplicity}, {"excess_points", f.excess_points}});
      }
      out << Json{{"name", g.name()}, {"grid_n", grid}, {"tol", tol}, {"flat_bands", flats}}.dump(2) << '\n';
    } else if (*estimate_cmd) {
      const FundamentalGraph g = load_graph(graph_path);
      const SpectrumReport r = report(g, opt);
      out << Json{{"name", g.name()}, {"estimate", r.estimate}, {"measure", r.measure}}.dump(2) << '\n';
    } else if (*oracle_cmd) {
      const FundamentalGraph g = load_graph(graph_path);
      const double d = quotient_discrepancy(g, torus_n);
      out << Json{{"name", g.name()},
                  {"N", torus_n},
                  {"dimension", g.nu() * torus_n * torus_n},
                  {"max_discrepancy", d},
                  {"pass", d <= kOracleTolerance}}
                 .dump(2)
          << '\n';
      return d <= kOracleTolerance ? 0 : 1;
    } else if (*a_square) {
      const auto r = perturbed_square({tau[0], tau[1]}, scan);
      Json j{{"tau", {tau[0], tau[1]}},
             {"lambda_minus", r.lambda_minus},
             {"method", to_string(r.method)},
             {"bound", r.bound}};
      j["asymptotic_ratio"] = r.asymptotic_ratio ? Json(*r.asymptotic_ratio) : Json(nullptr);
      out << j.dump(2) << '\n';
    } else if (*a_graphene) {
      const auto r = perturbed_graphene({tau[0], tau[1]}, detail::parse_attach(attach), scan);
      Json checks = Json::object();
      for (const auto& c : r.checks) checks[c.name] = c.ok;
      Json j{{"tau", {tau[0], tau[1]}},
             {"attach", attach},
             {"case", to_string(r.kind)},
             {"lambda1_minus", r.lambda1_minus},
             {"lambda1_plus", r.lambda1_plus},
             {"lambda2_minus", r.lambda2_minus},
             {"lambda2_plus", r.lambda2_plus},
             {"intervals", detail::interval_pairs(r.intervals)},
             {"measure", r.measure},
             {"checks", checks}};
      j["gap"] = r.gap ? Json::array({r.gap->lower, r.gap->upper}) : Json(nullptr);
      out << j.dump(2) << '\n';
    } else if (*a_kagome) {
      out << report_document(kagome_closed_form(scan)).dump(2) << '\n';
    } else if (*a_two) {
      const auto r = two_vertex_gap(d1, d2, scan);
      out << Json{{"lambda0", r.lambda0},
                  {"theta_star", detail::theta_json(r.theta_star)},
                  {"cos_theta_star", {std::cos(r.theta_star.t1), std::cos(r.theta_star.t2)}},
                  {"intervals", detail::interval_pairs(r.intervals)}}
                 .dump(2)
          << '\n';
    } else if (*a_three) {
      const auto r = three_vertex_bipartite(load_graph(graph_path), scan);
      out << Json{{"hub", r.hub},
                  {"lambda0", r.lambda0},
                  {"zero_flat_multiplicity", r.zero_flat_multiplicity},
                  {"ac_intervals", detail::interval_pairs(r.ac_intervals)}}
                 .dump(2)
          << '\n';
    } else if (*a_dirac) {
      out << Json{{"t", {dirac_t[0], dirac_t[1]}},
                  {"residual", dirac_cone_residual(dirac_t[0], dirac_t[1])},
                  {"residual_gauged", dirac_cone_residual_gauged(dirac_t[0], dirac_t[1])}}
                 .dump(2)
          << '\n';
    }
  } catch (const UsageError& e) {
    err << "lapgraph: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "lapgraph: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lapgraph::cli
