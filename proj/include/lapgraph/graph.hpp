#pragma once

// Z^2-periodic graphs described by their fundamental graph: a finite
// multigraph whose edges carry integer indices recording which lattice cell
// the edge enters.

#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lapgraph/error.hpp"
#include "lapgraph/hermite.hpp"
#include "lapgraph/index2.hpp"

namespace lapgraph {

/// One unoriented edge of the fundamental graph. Vertex ids are 1-based.
/// The oriented pair it induces is (tail, head, index) and (head, tail, -index).
struct EdgeSpec {
  int tail = 1;
  int head = 1;
  Index2 index;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

struct OrientedEdge {
  int tail = 1;
  int head = 1;
  Index2 index;

  bool is_bridge() const noexcept { return !index.is_zero(); }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Validated fundamental graph. Immutable once constructed.
class FundamentalGraph {
 public:
  FundamentalGraph(int nu, std::vector<EdgeSpec> edges, std::string name = {})
      : nu_(nu), edges_(std::move(edges)), name_(std::move(name)) {
    if (nu_ < 1) throw Error(Errc::BadParams, "vertex count must be >= 1, got " + std::to_string(nu_));
    degrees_.assign(static_cast<std::size_t>(nu_), 0);
    for (const auto& e : edges_) {
      for (int v : {e.tail, e.head}) {
        if (v < 1 || v > nu_) {
          throw Error(Errc::InvalidVertexId,
                      "vertex " + std::to_string(v) + " outside 1.." + std::to_string(nu_));
        }
      }
      // A loop starts at its vertex in both orientations.
      ++degrees_[static_cast<std::size_t>(e.tail - 1)];
      ++degrees_[static_cast<std::size_t>(e.head - 1)];
    }
    for (int j = 0; j < nu_; ++j) {
      if (degrees_[static_cast<std::size_t>(j)] == 0) {
        throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(j + 1) + " has no edges");
      }
    }
  }

  int nu() const noexcept { return nu_; }
  const std::vector<EdgeSpec>& edges() const noexcept { return edges_; }
  const std::string& name() const noexcept { return name_; }

  /// Degree of vertex j (1-based): number of oriented edges starting there.
  int degree(int j) const { return degrees_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  FundamentalGraph renamed(std::string name) const { return FundamentalGraph(nu_, edges_, std::move(name)); }

  friend bool operator==(const FundamentalGraph& a, const FundamentalGraph& b) {
    return a.nu_ == b.nu_ && a.edges_ == b.edges_;
  }

 private:
  int nu_;
  std::vector<EdgeSpec> edges_;
  std::string name_;
  std::vector<int> degrees_;
};

inline FundamentalGraph new_fundamental_graph(int nu, std::vector<EdgeSpec> edges, std::string name = {}) {
  return FundamentalGraph(nu, std::move(edges), std::move(name));
}

inline std::vector<OrientedEdge> oriented_edges(const FundamentalGraph& g) {
  std::vector<OrientedEdge> out;
  out.reserve(2 * g.edges().size());
  for (const auto& e : g.edges()) {
    out.push_back({e.tail, e.head, e.index});
    out.push_back({e.head, e.tail, -e.index});
  }
  return out;
}

/// Oriented-edge counts between vertex pairs, 1-based access.
class PairCounts {
 public:
  explicit PairCounts(int nu) : nu_(nu), counts_(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu), 0) {}

  int nu() const noexcept { return nu_; }
  int operator()(int j, int k) const { return counts_[slot(j, k)]; }
  int& operator()(int j, int k) { return counts_[slot(j, k)]; }

  long total() const noexcept {
    long s = 0;
    for (int c : counts_) s += c;
    return s;
  }
  bool all_zero() const noexcept { return total() == 0; }

 private:
  std::size_t slot(int j, int k) const {
    if (j < 1 || j > nu_ || k < 1 || k > nu_) throw Error(Errc::InvalidVertexId, "pair index out of range");
    return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(nu_) + static_cast<std::size_t>(k - 1);
  }

  int nu_;
  std::vector<int> counts_;
};

/// b(j, k) = number of oriented edges (v_j, v_k) with nonzero index.
using BridgeTable = PairCounts;

inline BridgeTable bridges(const FundamentalGraph& g) {
  BridgeTable b(g.nu());
  for (const auto& e : oriented_edges(g)) {
    if (e.is_bridge()) ++b(e.tail, e.head);
  }
  return b;
}

/// kappa(j, k) = number of oriented edges (v_j, v_k), any index.
inline PairCounts edge_multiplicities(const FundamentalGraph& g) {
  PairCounts m(g.nu());
  for (const auto& e : oriented_edges(g)) ++m(e.tail, e.head);
  return m;
}

namespace detail {

// 2-colours an undirected multigraph given as (u, v) pairs on n vertices,
// 0-based. Self-pairs make it non-bipartite.
inline bool two_colorable(int n, std::span<const std::pair<int, int>> pairs) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : pairs) {
    if (u == v) return false;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        auto& cv = color[static_cast<std::size_t>(v)];
        if (cv == -1) {
          cv = 1 - color[static_cast<std::size_t>(u)];
          q.push(v);
        } else if (cv == color[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline std::int64_t mod2(std::int64_t x) { return x & 1; }

}  // namespace detail

/// Two-colourability of the fundamental graph itself, indices ignored.
inline bool is_bipartite_fundamental(const FundamentalGraph& g) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.edges().size());
  for (const auto& e : g.edges()) pairs.emplace_back(e.tail - 1, e.head - 1);
  return detail::two_colorable(g.nu(), pairs);
}

/// Two-colourability of the periodic graph, decided on its quotient by
/// (2Z)^2: copy (j, p), p in (Z/2Z)^2, is joined to (k, p + index mod 2).
/// Exact for connected periodic graphs; a sufficient condition otherwise.
inline bool is_bipartite_periodic(const FundamentalGraph& g) {
  auto copy_id = [](int j, std::int64_t p1, std::int64_t p2) {
    return 4 * (j - 1) + static_cast<int>(2 * p1 + p2);
  };
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(4 * g.edges().size());
  for (const auto& e : g.edges()) {
    for (std::int64_t p1 = 0; p1 < 2; ++p1) {
      for (std::int64_t p2 = 0; p2 < 2; ++p2) {
        pairs.emplace_back(copy_id(e.tail, p1, p2),
                           copy_id(e.head, detail::mod2(p1 + e.index.t1), detail::mod2(p2 + e.index.t2)));
      }
    }
  }
  return detail::two_colorable(4 * g.nu(), pairs);
}

/// Subgroup of Z^2 spanned by the index sums of a cycle basis of the
/// fundamental graph. The basis is left empty when the fundamental graph
/// itself is disconnected.
struct CycleLattice {
  bool fundamental_connected = false;
  HermiteBasis2 basis;
};

inline CycleLattice cycle_lattice(const FundamentalGraph& g) {
  const auto n = static_cast<std::size_t>(g.nu());
  std::vector<std::vector<std::pair<int, Index2>>> adj(n);
  for (const auto& e : oriented_edges(g)) {
    adj[static_cast<std::size_t>(e.tail - 1)].emplace_back(e.head - 1, e.index);
  }
  // Spanning-tree potential: the index sum along the tree path from v_1.
  std::vector<Index2> potential(n);
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  seen[0] = true;
  q.push(0);
  std::size_t reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& [v, tau] : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      potential[static_cast<std::size_t>(v)] = potential[static_cast<std::size_t>(u)] + tau;
      ++reached;
      q.push(v);
    }
  }
  CycleLattice out;
  out.fundamental_connected = reached == n;
  if (!out.fundamental_connected) return out;
  // Tree edges contribute zero; every other edge closes a cycle.
  std::vector<Index2> gens;
  gens.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    const Index2 c = potential[static_cast<std::size_t>(e.tail - 1)] + e.index -
                     potential[static_cast<std::size_t>(e.head - 1)];
    if (!c.is_zero()) gens.push_back(c);
  }
  out.basis = hermite_basis(gens);
  return out;
}

/// The periodic graph is connected iff the fundamental graph is connected
/// and its cycle indices generate all of Z^2.
inline bool is_connected_periodic(const FundamentalGraph& g) {
  const auto cl = cycle_lattice(g);
  return cl.fundamental_connected && cl.basis.generates_z2();
}

/// Re-gauges the indices by per-vertex integer offsets:
/// (j, k, index) -> (j, k, index + p_k - p_j). Spectrum-preserving.
inline FundamentalGraph gauge_shift(const FundamentalGraph& g, std::span<const Index2> offsets) {
  if (offsets.size() != static_cast<std::size_t>(g.nu())) {
    throw Error(Errc::BadParams, "gauge_shift needs one offset per vertex");
  }
  std::vector<EdgeSpec> edges = g.edges();
  for (auto& e : edges) {
    e.index = e.index + offsets[static_cast<std::size_t>(e.head - 1)] - offsets[static_cast<std::size_t>(e.tail - 1)];
  }
  return FundamentalGraph(g.nu(), std::move(edges), g.name());
}

/// Multiplies every index by n >= 1.
inline FundamentalGraph scale_indices(const FundamentalGraph& g, std::int64_t n) {
  if (n < 1) throw Error(Errc::BadParams, "scale factor must be >= 1");
  std::vector<EdgeSpec> edges = g.edges();
  for (auto& e : edges) e.index = n * e.index;
  return FundamentalGraph(g.nu(), std::move(edges), g.name());
}

inline FundamentalGraph add_edge(const FundamentalGraph& g, int tail, int head, Index2 index) {
  for (int v : {tail, head}) {
    if (v < 1 || v > g.nu()) {
      throw Error(Errc::InvalidVertexId, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(g.nu()));
    }
  }
  std::vector<EdgeSpec> edges = g.edges();
  edges.push_back({tail, head, index});
  return FundamentalGraph(g.nu(), std::move(edges), g.name());
}

/// Replaces every edge (j, k, index) by a path through n fresh vertices.
/// The original index sits on the last segment; the others get (0, 0).
inline FundamentalGraph subdivide_all_edges(const FundamentalGraph& g, int n) {
  if (n < 1) throw Error(Errc::BadParams, "subdivision count must be >= 1, got " + std::to_string(n));
  int next = g.nu();
  std::vector<EdgeSpec> edges;
  edges.reserve(g.edges().size() * static_cast<std::size_t>(n + 1));
  for (const auto& e : g.edges()) {
    int prev = e.tail;
    for (int s = 0; s < n; ++s) {
      const int fresh = ++next;
      edges.push_back({prev, fresh, {}});
      prev = fresh;
    }
    edges.push_back({prev, e.head, e.index});
  }
  return FundamentalGraph(next, std::move(edges), g.name());
}

}  // namespace lapgraph
