#pragma once

// Brute-force cross-checks that bypass the Floquet machinery: the Laplacian
// of the finite torus quotient and breadth-first search on a finite patch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "lapgraph/error.hpp"
#include "lapgraph/floquet.hpp"
#include "lapgraph/graph.hpp"

namespace lapgraph {

inline constexpr std::int64_t kMaxQuotientDim = 4096;

/// Dense Laplacian of the quotient graph Gamma / (N Z)^2. Copy (j, p) has
/// row index (j - 1) N^2 + p1 N + p2.
inline Eigen::MatrixXd quotient_laplacian(const FundamentalGraph& g, int n) {
  if (n < 2) throw Error(Errc::BadParams, "torus size N must be >= 2, got " + std::to_string(n));
  const std::int64_t cells = static_cast<std::int64_t>(n) * n;
  const std::int64_t dim = cells * g.nu();
  if (dim > kMaxQuotientDim) {
    throw Error(Errc::DimensionTooLarge, "quotient dimension " + std::to_string(dim) + " exceeds " +
                                             std::to_string(kMaxQuotientDim));
  }
  auto mod = [n](std::int64_t x) { return ((x % n) + n) % n; };
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& e : oriented_edges(g)) {
    const double w = 1.0 / std::sqrt(static_cast<double>(g.degree(e.tail)) * g.degree(e.head));
    for (std::int64_t p1 = 0; p1 < n; ++p1) {
      for (std::int64_t p2 = 0; p2 < n; ++p2) {
        const std::int64_t row = (e.tail - 1) * cells + p1 * n + p2;
        const std::int64_t col = (e.head - 1) * cells + mod(p1 + e.index.t1) * n + mod(p2 + e.index.t2);
        L(row, col) += w;
      }
    }
  }
  return L;
}

/// All nu N^2 eigenvalues of the quotient Laplacian, ascending.
inline std::vector<double> quotient_eigenvalues(const FundamentalGraph& g, int n) {
  const Eigen::MatrixXd L = quotient_laplacian(g, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Union of fiber spectra over theta in {2 pi k / N}^2, ascending.
inline std::vector<double> fiber_union_eigenvalues(const FundamentalGraph& g, int n) {
  const FloquetAssembler fiber(g);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * n * g.nu());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Theta t{2.0 * std::numbers::pi * a / n, 2.0 * std::numbers::pi * b / n};
      const EigList ev = eigenvalues(fiber(t));
      out.insert(out.end(), ev.begin(), ev.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest pointwise difference between the two sorted multisets.
inline double quotient_discrepancy(const FundamentalGraph& g, int n) {
  const auto q = quotient_eigenvalues(g, n);
  const auto f = fiber_union_eigenvalues(g, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) worst = std::max(worst, std::abs(q[i] - f[i]));
  return worst;
}

/// Breadth-first search from (v_1, 0) over copies (j, p) with |p|_inf <= radius.
/// True iff every copy with |p|_inf <= radius / 3 is reached.
inline bool patch_connectivity(const FundamentalGraph& g, int radius) {
  std::int64_t max_index = 0;
  for (const auto& e : g.edges()) max_index = std::max(max_index, linf_norm(e.index));
  if (radius < 3 * (max_index + 1)) {
    throw Error(Errc::BadParams, "radius " + std::to_string(radius) + " below 3 * (max |index| + 1)");
  }
  const std::int64_t side = 2 * static_cast<std::int64_t>(radius) + 1;
  auto id = [&](int j, std::int64_t p1, std::int64_t p2) {
    return ((static_cast<std::int64_t>(j - 1) * side) + (p1 + radius)) * side + (p2 + radius);
  };
  std::vector<std::vector<OrientedEdge>> out_edges(static_cast<std::size_t>(g.nu()));
  for (const auto& e : oriented_edges(g)) out_edges[static_cast<std::size_t>(e.tail - 1)].push_back(e);

  struct Node {
    int j;
    std::int64_t p1, p2;
  };
  std::vector<char> seen(static_cast<std::size_t>(side * side * g.nu()), 0);
  std::queue<Node> q;
  q.push({1, 0, 0});
  seen[static_cast<std::size_t>(id(1, 0, 0))] = 1;
  while (!q.empty()) {
    const Node u = q.front();
    q.pop();
    for (const auto& e : out_edges[static_cast<std::size_t>(u.j - 1)]) {
      const std::int64_t p1 = u.p1 + e.index.t1, p2 = u.p2 + e.index.t2;
      if (std::abs(p1) > radius || std::abs(p2) > radius) continue;
      auto& s = seen[static_cast<std::size_t>(id(e.head, p1, p2))];
      if (s) continue;
      s = 1;
      q.push({e.head, p1, p2});
    }
  }
  const std::int64_t inner = radius / 3;
  for (int j = 1; j <= g.nu(); ++j) {
    for (std::int64_t p1 = -inner; p1 <= inner; ++p1) {
      for (std::int64_t p2 = -inner; p2 <= inner; ++p2) {
        if (!seen[static_cast<std::size_t>(id(j, p1, p2))]) return false;
      }
    }
  }
  return true;
}

}  // namespace lapgraph
