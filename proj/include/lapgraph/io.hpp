#pragma once

// Graph files, band CSVs and report documents. Graph files and reports are
// JSON; numbers are written with round-trip precision.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapgraph/error.hpp"
#include "lapgraph/floquet.hpp"
#include "lapgraph/graph.hpp"
#include "lapgraph/spectrum.hpp"

namespace lapgraph {

using Json = nlohmann::ordered_json;

inline Json to_json(const FundamentalGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail, e.head, e.index.t1, e.index.t2});
  return Json{{"name", g.name()}, {"nu", g.nu()}, {"edges", std::move(edges)}};
}

/// `where` prefixes error messages, usually a file path.
inline FundamentalGraph graph_from_json(const Json& j, const std::string& where = "graph") {
  auto fail = [&](const std::string& msg) { return Error(Errc::Format, where + ": " + msg); };
  if (!j.is_object()) throw fail("expected an object");
  if (!j.contains("nu") || !j["nu"].is_number_integer()) throw fail("field 'nu' must be an integer");
  if (!j.contains("edges") || !j["edges"].is_array()) throw fail("field 'edges' must be an array");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw fail("field 'name' must be a string");
    name = j["name"].get<std::string>();
  }
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const Json& e = j["edges"][i];
    if (!e.is_array() || e.size() != 4) throw fail("edge " + std::to_string(i) + " must be [tail, head, t1, t2]");
    for (const auto& x : e) {
      if (!x.is_number_integer()) throw fail("edge " + std::to_string(i) + " has a non-integer entry");
    }
    edges.push_back({e[0].get<int>(), e[1].get<int>(), {e[2].get<std::int64_t>(), e[3].get<std::int64_t>()}});
  }
  return FundamentalGraph(j["nu"].get<int>(), std::move(edges), name);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(Errc::Io, "write to '" + path + "' failed");
}

inline FundamentalGraph parse_graph(const std::string& text, const std::string& where = "graph") {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Format, where + ": " + e.what());
  }
  return graph_from_json(j, where);
}

inline FundamentalGraph load_graph(const std::string& path) { return parse_graph(read_text(path), path); }

inline void save_graph(const FundamentalGraph& g, const std::string& path) {
  write_text(path, to_json(g).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Band CSV: theta1,theta2,lambda_1..lambda_nu, one row per grid point.

inline void write_bands_csv(std::ostream& out, const FundamentalGraph& g, int grid_n, int threads = 0) {
  detail::check_grid(grid_n);
  const FloquetAssembler fiber(g);
  const auto samples = detail::sample_grid(fiber, grid_n, threads);
  const auto nu = static_cast<std::size_t>(g.nu());
  out << "theta1,theta2";
  for (std::size_t k = 1; k <= nu; ++k) out << ",lambda_" << k;
  out << '\n';
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  const auto points = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
  for (std::size_t i = 0; i < points; ++i) {
    const Theta t = grid_theta(grid_n, i);
    out << t.t1 << ',' << t.t2;
    for (std::size_t k = 0; k < nu; ++k) out << ',' << samples[i * nu + k];
    out << '\n';
  }
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Report document.

namespace detail {

inline Json intervals_json(const std::vector<Interval>& v) {
  Json a = Json::array();
  for (const auto& iv : v) a.push_back({iv.lower, iv.upper});
  return a;
}

inline std::vector<Interval> intervals_from(const Json& a) {
  std::vector<Interval> out;
  for (const auto& p : a) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

inline std::string sig6(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string intervals_text(const std::vector<Interval>& v) {
  if (v.empty()) return "none";
  std::string s;
  for (const auto& iv : v) {
    if (!s.empty()) s += " u ";
    s += "[" + sig6(iv.lower) + ", " + sig6(iv.upper) + "]";
  }
  return s;
}

}  // namespace detail

/// Full-precision fields of a report, in a fixed key order.
inline Json to_json(const SpectrumReport& r) {
  Json flats = Json::array();
  for (const auto& f : r.flat_bands) {
    flats.push_back({{"value", f.value},
                     {"multiplicity", f.multiplicity},
                     {"embedded", f.embedded},
                     {"excess_points", f.excess_points}});
  }
  return Json{{"name", r.name},
              {"nu", r.nu},
              {"grid_n", r.grid_n},
              {"bands", detail::intervals_json(r.bands)},
              {"ac_intervals", detail::intervals_json(r.ac_intervals)},
              {"intervals", detail::intervals_json(r.intervals)},
              {"flat_bands", std::move(flats)},
              {"gaps", detail::intervals_json(r.gaps)},
              {"measure", r.measure},
              {"estimate", r.estimate},
              {"bipartite_periodic", r.bipartite_periodic},
              {"bipartite_fundamental", r.bipartite_fundamental},
              {"connected", r.connected},
              {"symmetric", r.symmetric}};
}

inline SpectrumReport report_from_json(const Json& j) {
  try {
    SpectrumReport r;
    r.name = j.at("name").get<std::string>();
    r.nu = j.at("nu").get<int>();
    r.grid_n = j.at("grid_n").get<int>();
    r.bands = detail::intervals_from(j.at("bands"));
    r.ac_intervals = detail::intervals_from(j.at("ac_intervals"));
    r.intervals = detail::intervals_from(j.at("intervals"));
    for (const auto& f : j.at("flat_bands")) {
      r.flat_bands.push_back({f.at("value").get<double>(), f.at("multiplicity").get<int>(),
                              f.at("embedded").get<bool>(), f.at("excess_points").get<std::size_t>()});
    }
    r.gaps = detail::intervals_from(j.at("gaps"));
    r.measure = j.at("measure").get<double>();
    r.estimate = j.at("estimate").get<double>();
    r.bipartite_periodic = j.at("bipartite_periodic").get<bool>();
    r.bipartite_fundamental = j.at("bipartite_fundamental").get<bool>();
    r.connected = j.at("connected").get<bool>();
    r.symmetric = j.at("symmetric").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Format, std::string("report: ") + e.what());
  }
}

/// Human-readable table, 6 significant digits.
inline std::vector<std::string> summary_lines(const SpectrumReport& r) {
  std::vector<std::string> lines;
  lines.push_back("graph      " + r.name + " (nu = " + std::to_string(r.nu) + ", grid " + std::to_string(r.grid_n) + ")");
  lines.push_back("spectrum   " + detail::intervals_text(r.intervals));
  lines.push_back("ac part    " + detail::intervals_text(r.ac_intervals));
  lines.push_back("gaps       " + detail::intervals_text(r.gaps));
  std::string flats;
  for (const auto& f : r.flat_bands) {
    if (!flats.empty()) flats += ", ";
    flats += detail::sig6(f.value) + " x" + std::to_string(f.multiplicity) + (f.embedded ? " (embedded)" : "");
  }
  lines.push_back("flat       " + (flats.empty() ? std::string("none") : flats));
  lines.push_back("measure    " + detail::sig6(r.measure) + " (estimate " + detail::sig6(r.estimate) + ")");
  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  lines.push_back("connected " + yn(r.connected) + ", bipartite " + yn(r.bipartite_periodic) + " (fundamental " +
                  yn(r.bipartite_fundamental) + "), symmetric " + yn(r.symmetric));
  return lines;
}

/// {"report": full-precision fields, "summary": table lines}
inline Json report_document(const SpectrumReport& r) {
  return Json{{"report", to_json(r)}, {"summary", summary_lines(r)}};
}

}  // namespace lapgraph
