#pragma once

// Named fundamental graphs with their standard edge indices.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lapgraph/error.hpp"
#include "lapgraph/graph.hpp"

namespace lapgraph {

/// One vertex, loops (1,0) and (0,1).
inline FundamentalGraph square_lattice() {
  return FundamentalGraph(1, {{1, 1, {1, 0}}, {1, 1, {0, 1}}}, "square");
}

/// Hexagonal lattice: two vertices joined by edges with indices (0,0), (1,0), (0,1).
inline FundamentalGraph hexagonal_lattice() {
  return FundamentalGraph(2, {{1, 2, {0, 0}}, {1, 2, {1, 0}}, {1, 2, {0, 1}}}, "graphene");
}

/// Square lattice plus the diagonal loop (1,1).
inline FundamentalGraph triangular_lattice() {
  return add_edge(square_lattice(), 1, 1, {1, 1}).renamed("triangular");
}

inline FundamentalGraph kagome_lattice() {
  return FundamentalGraph(3,
                          {{1, 2, {0, 0}},
                           {1, 2, {-1, 0}},
                           {1, 3, {0, 0}},
                           {1, 3, {0, -1}},
                           {2, 3, {0, 0}},
                           {2, 3, {1, -1}}},
                          "kagome");
}

/// Square lattice whose single vertex becomes v_nu, with nu - 1 pendant
/// vertices v_1..v_{nu-1} attached by zero-index edges.
inline FundamentalGraph decorated_square(int nu) {
  if (nu < 2) throw Error(Errc::BadParams, "decorated_square needs nu >= 2, got " + std::to_string(nu));
  std::vector<EdgeSpec> edges;
  for (int j = 1; j < nu; ++j) edges.push_back({j, nu, {0, 0}});
  edges.push_back({nu, nu, {1, 0}});
  edges.push_back({nu, nu, {0, 1}});
  return FundamentalGraph(nu, std::move(edges), "decorated_square_" + std::to_string(nu));
}

/// Square lattice with n extra vertices on every edge (nu = 2n + 1).
inline FundamentalGraph subdivided_square(int n) {
  return subdivide_all_edges(square_lattice(), n).renamed("subdivided_square_" + std::to_string(n));
}

/// Two vertices joined by |d1| * |d2| edges with indices running over d1 x d2.
inline FundamentalGraph product_two_vertex(const std::vector<long>& d1, const std::vector<long>& d2) {
  if (d1.empty() || d2.empty()) throw Error(Errc::BadParams, "index sets must be non-empty");
  std::vector<EdgeSpec> edges;
  for (long b : d2) {
    for (long a : d1) edges.push_back({1, 2, {a, b}});
  }
  return FundamentalGraph(2, std::move(edges), "product_two_vertex");
}

/// Square lattice plus one edge-loop with the given index.
inline FundamentalGraph perturbed_square_graph(Index2 tau) {
  return add_edge(square_lattice(), 1, 1, tau).renamed("perturbed_square");
}

enum class GrapheneAttach { Edge, LoopV1, LoopV2 };

/// Hexagonal lattice plus one edge: (v_1, v_2) for Edge, otherwise a loop.
inline FundamentalGraph perturbed_graphene_graph(Index2 tau, GrapheneAttach attach) {
  const auto base = hexagonal_lattice();
  switch (attach) {
    case GrapheneAttach::Edge: return add_edge(base, 1, 2, tau).renamed("perturbed_graphene");
    case GrapheneAttach::LoopV1: return add_edge(base, 1, 1, tau).renamed("perturbed_graphene");
    case GrapheneAttach::LoopV2: return add_edge(base, 2, 2, tau).renamed("perturbed_graphene");
  }
  return base;
}

using CatalogParams = std::map<std::string, std::string>;

namespace detail {

inline long param_int(const CatalogParams& p, const std::string& key, long fallback, bool required = false) {
  const auto it = p.find(key);
  if (it == p.end()) {
    if (required) throw Error(Errc::BadParams, "missing parameter '" + key + "'");
    return fallback;
  }
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::BadParams, "parameter '" + key + "' is not an integer: " + it->second);
  }
}

inline std::vector<long> param_list(const CatalogParams& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw Error(Errc::BadParams, "missing parameter '" + key + "'");
  std::vector<long> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::BadParams, "parameter '" + key + "' has a non-integer entry: " + item);
    }
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"square",           "graphene",          "hexagonal",
                                              "triangular",       "kagome",            "decorated-square",
                                              "subdivided-square", "product-two-vertex", "perturbed-square",
                                              "perturbed-graphene"};
  return names;
}

/// Builds a catalog graph by name. Integer parameters are passed as strings;
/// index sets as comma-separated lists.
///   decorated-square: nu          subdivided-square: N
///   product-two-vertex: d1, d2    perturbed-square: t1, t2
///   perturbed-graphene: t1, t2, attach (edge | loop | loop1 | loop2)
inline FundamentalGraph catalog(const std::string& name, const CatalogParams& params = {}) {
  if (name == "square") return square_lattice();
  if (name == "graphene" || name == "hexagonal") return hexagonal_lattice();
  if (name == "triangular") return triangular_lattice();
  if (name == "kagome") return kagome_lattice();
  if (name == "decorated-square") return decorated_square(static_cast<int>(detail::param_int(params, "nu", 0, true)));
  if (name == "subdivided-square") return subdivided_square(static_cast<int>(detail::param_int(params, "N", 0, true)));
  if (name == "product-two-vertex") {
    return product_two_vertex(detail::param_list(params, "d1"), detail::param_list(params, "d2"));
  }
  const Index2 tau{detail::param_int(params, "t1", 0), detail::param_int(params, "t2", 0)};
  if (name == "perturbed-square") return perturbed_square_graph(tau);
  if (name == "perturbed-graphene") {
    const auto it = params.find("attach");
    const std::string attach = it == params.end() ? "loop" : it->second;
    if (attach == "edge") return perturbed_graphene_graph(tau, GrapheneAttach::Edge);
    if (attach == "loop" || attach == "loop2") return perturbed_graphene_graph(tau, GrapheneAttach::LoopV2);
    if (attach == "loop1") return perturbed_graphene_graph(tau, GrapheneAttach::LoopV1);
    throw Error(Errc::BadParams, "attach must be edge, loop, loop1 or loop2, got " + attach);
  }
  throw Error(Errc::UnknownFamily, "no catalog graph named '" + name + "'");
}

}  // namespace lapgraph
