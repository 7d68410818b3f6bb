#pragma once

// Local polishing of scalar functions on the torus: golden-section line
// searches along a fixed set of directions, started from a grid extremum.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lapgraph/floquet.hpp"

namespace lapgraph {

struct LocalMin {
  double value = std::numeric_limits<double>::infinity();
  Theta at;
  int evaluations = 0;
};

struct PolishOptions {
  double radius = 0.05;      // half-width of each line search
  double theta_tol = 1e-10;  // smallest line-search half-width
  int max_evaluations = 3000;
  int max_sweeps = 256;
};

/// Golden-section minimum of f on [lo, hi]. Returns (argmin, value).
template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double tol, int& budget) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  budget -= 2;
  while (b - a > tol && budget > 0) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    --budget;
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Minimizes f starting from `start`, whose value is `start_value`. Never
/// returns anything worse than the start. Line searches run along eight
/// directions so that kinks where bands touch rarely stall the search.
template <class F>
LocalMin polish_min(F&& f, Theta start, double start_value, const PolishOptions& opt = {}) {
  static const auto dirs = [] {
    std::array<std::array<double, 2>, 8> d{};
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(d.size());
      d[k] = {std::cos(a), std::sin(a)};
    }
    return d;
  }();
  LocalMin best{start_value, start, 0};
  int budget = opt.max_evaluations;
  double radius = opt.radius;
  auto line_search = [&](Theta base, double d1, double d2, double lo, double hi) {
    auto along = [&](double s) { return f(Theta{base.t1 + s * d1, base.t2 + s * d2}); };
    const int before_budget = budget;
    auto [s, v] = golden_section(along, lo, hi, std::max(opt.theta_tol, 1e-3 * (hi - lo)), budget);
    best.evaluations += before_budget - budget;
    if (v < best.value) {
      best.value = v;
      best.at = Theta{base.t1 + s * d1, base.t2 + s * d2};
      return std::abs(s);
    }
    return 0.0;
  };
  for (int sweep = 0; sweep < opt.max_sweeps && budget > 0 && radius > opt.theta_tol; ++sweep) {
    const double before = best.value;
    const Theta sweep_start = best.at;
    double longest = 0.0;
    for (const auto& dir : dirs) {
      if (budget <= 0) break;
      longest = std::max(longest, line_search(best.at, dir[0], dir[1], -radius, radius));
    }
    if (!(best.value < before)) {
      radius *= 0.5;
      continue;
    }
    // Search along the net displacement of the sweep; this follows narrow
    // valleys and cone flanks that the fixed directions zigzag across.
    const double d1 = wrap_angle(best.at.t1 - sweep_start.t1);
    const double d2 = wrap_angle(best.at.t2 - sweep_start.t2);
    const double len = std::hypot(d1, d2);
    if (len > 0.0 && budget > 0) line_search(best.at, d1 / len, d2 / len, -len, std::max(radius, 8.0 * len));
    // Keep the radius while steps still reach the edge of the bracket.
    if (longest < 0.5 * radius) radius *= 0.5;
  }
  return best;
}

template <class F>
LocalMin polish_max(F&& f, Theta start, double start_value, const PolishOptions& opt = {}) {
  auto neg = [&](Theta t) { return -f(t); };
  LocalMin m = polish_min(neg, start, -start_value, opt);
  m.value = -m.value;
  return m;
}

}  // namespace lapgraph
