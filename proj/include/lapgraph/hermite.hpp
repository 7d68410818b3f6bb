#pragma once

// Row-style Hermite normal form for subgroups of Z^2.

#include <cstdint>
#include <numeric>
#include <span>
#include <tuple>

#include "lapgraph/index2.hpp"

namespace lapgraph {

/// Basis rows (a, b) and (0, c) of the subgroup generated by a list of
/// integer vectors, with a >= 0, c >= 0 and 0 <= b < c when c > 0.
/// A zero row means the subgroup has lower rank.
struct HermiteBasis2 {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  int rank() const noexcept { return (a != 0 ? 1 : 0) + (c != 0 ? 1 : 0); }

  /// Index [Z^2 : H]; zero when H has rank < 2.
  std::int64_t index() const noexcept { return a * c; }

  bool generates_z2() const noexcept { return a == 1 && c == 1; }
};

namespace detail {

// Returns (g, s, t) with s*x + t*y = g = gcd(x, y) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t x, std::int64_t y) {
  std::int64_t old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

inline HermiteBasis2 hermite_basis(std::span<const Index2> generators) {
  // Pivot row (a, b); everything eliminated from column one lands in the
  // second-column gcd c.
  std::int64_t a = 0, b = 0, c = 0;
  for (const Index2 g : generators) {
    std::int64_t x = g.t1, y = g.t2;
    if (x == 0) {
      c = std::gcd(c, y);
    } else if (a == 0) {
      a = x;
      b = y;
    } else {
      const auto [g1, s, t] = detail::ext_gcd(a, x);
      const std::int64_t rem = (x / g1) * b - (a / g1) * y;
      b = s * b + t * y;
      a = g1;
      c = std::gcd(c, rem);
    }
    if (a < 0) {
      a = -a;
      b = -b;
    }
    if (c > 0) b = detail::floor_mod(b, c);
  }
  return {a, b, c};
}

}  // namespace lapgraph
