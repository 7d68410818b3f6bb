#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lapgraph/lapgraph.hpp"

namespace lapgraph::fixtures {

/// Small random fundamental graph: 1..max_nu vertices, at most max_edges
/// edges, indices in [-max_index, max_index]^2, no isolated vertices.
inline FundamentalGraph random_graph(std::mt19937_64& rng, int max_nu = 4, int max_edges = 8, int max_index = 2) {
  std::uniform_int_distribution<int> nu_dist(1, max_nu);
  std::uniform_int_distribution<long> idx(-max_index, max_index);
  const int nu = nu_dist(rng);
  std::uniform_int_distribution<int> vertex(1, nu);
  std::vector<EdgeSpec> edges;
  std::vector<bool> touched(static_cast<std::size_t>(nu) + 1, false);
  for (int j = 1; j <= nu; ++j) {
    if (touched[static_cast<std::size_t>(j)]) continue;
    const int k = vertex(rng);
    edges.push_back({j, k, {idx(rng), idx(rng)}});
    touched[static_cast<std::size_t>(j)] = touched[static_cast<std::size_t>(k)] = true;
  }
  const int target = std::uniform_int_distribution<int>(static_cast<int>(edges.size()), max_edges)(rng);
  while (static_cast<int>(edges.size()) < target) edges.push_back({vertex(rng), vertex(rng), {idx(rng), idx(rng)}});
  return FundamentalGraph(nu, std::move(edges), "random");
}

inline std::vector<FundamentalGraph> random_graphs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<FundamentalGraph> out;
  for (int i = 0; i < count; ++i) out.push_back(random_graph(rng));
  return out;
}

/// Random graphs whose periodic graph is connected.
inline std::vector<FundamentalGraph> connected_random_graphs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<FundamentalGraph> out;
  while (static_cast<int>(out.size()) < count) {
    FundamentalGraph g = random_graph(rng);
    if (is_connected_periodic(g)) out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<FundamentalGraph> catalog_sample() {
  std::vector<FundamentalGraph> out{square_lattice(), hexagonal_lattice(), triangular_lattice(), kagome_lattice()};
  for (int nu : {2, 3, 4, 5, 8}) out.push_back(decorated_square(nu));
  for (int n : {1, 2, 3}) out.push_back(subdivided_square(n));
  out.push_back(product_two_vertex({-1, 0, 2}, {-1, 0, 2}));
  out.push_back(perturbed_square_graph({1, 1}));
  out.push_back(perturbed_square_graph({2, 1}));
  out.push_back(perturbed_graphene_graph({1, 0}, GrapheneAttach::LoopV2));
  out.push_back(perturbed_graphene_graph({1, 0}, GrapheneAttach::Edge));
  return out;
}

}  // namespace lapgraph::fixtures
