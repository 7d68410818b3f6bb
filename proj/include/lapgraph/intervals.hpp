#pragma once

#include <algorithm>
#include <vector>

namespace lapgraph {

/// Closed interval [lower, upper]; lower == upper is a point.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double length() const noexcept { return upper - lower; }
  bool contains(double x, double tol = 0.0) const noexcept { return x >= lower - tol && x <= upper + tol; }
  bool interior(double x, double tol) const noexcept { return x > lower + tol && x < upper - tol; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorts and merges intervals whose separation is at most `tol`.
inline std::vector<Interval> merge_intervals(std::vector<Interval> in, double tol = 0.0) {
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    return a.lower < b.lower || (a.lower == b.lower && a.upper < b.upper);
  });
  std::vector<Interval> out;
  for (const auto& iv : in) {
    if (!out.empty() && iv.lower <= out.back().upper + tol) {
      out.back().upper = std::max(out.back().upper, iv.upper);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

inline double total_length(const std::vector<Interval>& merged) {
  double s = 0.0;
  for (const auto& iv : merged) s += iv.length();
  return s;
}

/// Open gaps between consecutive merged intervals, reported as (lower, upper).
inline std::vector<Interval> gaps_between(const std::vector<Interval>& merged) {
  std::vector<Interval> out;
  for (std::size_t i = 1; i < merged.size(); ++i) out.push_back({merged[i - 1].upper, merged[i].lower});
  return out;
}

}  // namespace lapgraph
