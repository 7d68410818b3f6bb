#pragma once

#include <cstdint>
#include <cstdlib>
#include <ostream>

namespace lapgraph {

/// Integer 2-vector: an edge index, a cell offset, or a lattice generator.
struct Index2 {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;

  constexpr bool is_zero() const noexcept { return t1 == 0 && t2 == 0; }

  friend constexpr Index2 operator+(Index2 a, Index2 b) noexcept { return {a.t1 + b.t1, a.t2 + b.t2}; }
  friend constexpr Index2 operator-(Index2 a, Index2 b) noexcept { return {a.t1 - b.t1, a.t2 - b.t2}; }
  friend constexpr Index2 operator-(Index2 a) noexcept { return {-a.t1, -a.t2}; }
  friend constexpr Index2 operator*(std::int64_t n, Index2 a) noexcept { return {n * a.t1, n * a.t2}; }
  friend constexpr bool operator==(Index2, Index2) noexcept = default;
  friend constexpr auto operator<=>(Index2, Index2) noexcept = default;

  friend std::ostream& operator<<(std::ostream& os, Index2 t) {
    return os << '(' << t.t1 << ',' << t.t2 << ')';
  }
};

constexpr std::int64_t linf_norm(Index2 t) noexcept {
  const auto a = t.t1 < 0 ? -t.t1 : t.t1;
  const auto b = t.t2 < 0 ? -t.t2 : t.t2;
  return a > b ? a : b;
}

}  // namespace lapgraph
