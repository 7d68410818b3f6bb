#pragma once

// Band structure, flat bands, gaps and spectral measure of the periodic
// Laplacian, obtained by sampling the Floquet fibers on a uniform torus grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lapgraph/error.hpp"
#include "lapgraph/floquet.hpp"
#include "lapgraph/graph.hpp"
#include "lapgraph/intervals.hpp"
#include "lapgraph/optimize.hpp"
#include "lapgraph/parallel.hpp"

namespace lapgraph {

struct SpectrumOptions {
  /// Samples per torus direction. 240 puts (0,0), (pi,0), (0,pi), (pi,pi)
  /// and the points +-(2pi/3, -2pi/3) on the grid.
  int grid_n = 240;
  double flat_tol = 1e-9;
  bool refine = true;
  /// Evaluation budget per start point of the endpoint polish.
  int polish_evaluations = 3000;
  /// Grid-local extrema polished per band endpoint.
  int polish_starts = 4;
  bool keep_samples = false;
  /// Intervals closer than this are merged (conical touchings off the grid
  /// otherwise leave spurious slivers).
  double merge_tol = 1e-6;
  /// A flat band is embedded if it lies this far inside an ac interval.
  double embed_tol = 1e-7;
  int threads = 0;
  std::uint64_t seed = 20240917;
};

inline constexpr int kDefaultGrid = 240;

/// Grid point i = a * n + b of the uniform grid theta_k = -pi + 2 pi k / n.
inline Theta grid_theta(int n, std::size_t i) {
  const double step = 2.0 * std::numbers::pi / n;
  const auto a = static_cast<int>(i / static_cast<std::size_t>(n));
  const auto b = static_cast<int>(i % static_cast<std::size_t>(n));
  return Theta{-std::numbers::pi + step * a, -std::numbers::pi + step * b};
}

struct FlatBand {
  double value = 0.0;
  int multiplicity = 0;
  /// Grid points where more than `multiplicity` eigenvalues sit at `value`.
  std::size_t excess_points = 0;
};

struct Band {
  double lower = 0.0;
  double upper = 0.0;
  Theta argmin;
  Theta argmax;
  bool flat = false;

  Interval interval() const { return {lower, upper}; }
};

/// Bands in the labeling lambda_1 >= lambda_2 >= ...: first the nu - r
/// non-constant ones, then the r flat ones (largest value first).
struct BandStructure {
  int nu = 0;
  int grid_n = 0;
  bool exact = false;
  std::optional<Theta> theta0;
  std::vector<Band> bands;
  std::vector<FlatBand> flat;  // ascending in value
  /// Optional full sorted eigenvalue lists, grid point major.
  std::vector<double> samples;

  int flat_count() const {
    int r = 0;
    for (const auto& f : flat) r += f.multiplicity;
    return r;
  }
  int ac_count() const { return nu - flat_count(); }
};

namespace detail {

inline void check_grid(int grid_n) {
  if (grid_n < 4) throw Error(Errc::GridTooCoarse, "grid_n must be >= 4, got " + std::to_string(grid_n));
}

/// Sorted eigenvalue lists at every grid point, point-major.
inline std::vector<double> sample_grid(const FloquetAssembler& fiber, int grid_n, int threads) {
  const auto nu = static_cast<std::size_t>(fiber.nu());
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> samples(n * n * nu);
  parallel_for(n, threads, [&](std::size_t a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a * n + b;
      const EigList ev = descending_eigenvalues(fiber(grid_theta(grid_n, i)).dense());
      std::copy(ev.begin(), ev.end(), samples.begin() + static_cast<std::ptrdiff_t>(i * nu));
    }
  });
  return samples;
}

inline int count_near(const double* ev, std::size_t nu, double mu, double tol) {
  int c = 0;
  for (std::size_t k = 0; k < nu; ++k) c += std::abs(ev[k] - mu) <= tol ? 1 : 0;
  return c;
}

/// Candidates are the eigenvalue clusters of D(0) that also show up at two
/// random quasimomenta; each is then verified at every grid point.
inline std::vector<FlatBand> detect_flat(const FloquetAssembler& fiber, const std::vector<double>& samples,
                                         std::size_t points, double tol, std::uint64_t seed) {
  const auto nu = static_cast<std::size_t>(fiber.nu());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const EigList at_zero = descending_eigenvalues(fiber(Theta{}).dense());
  std::vector<EigList> probes;
  for (int p = 0; p < 2; ++p) {
    const double a = angle(rng);
    const double b = angle(rng);
    probes.push_back(descending_eigenvalues(fiber(Theta{a, b}).dense()));
  }

  std::vector<double> centers;
  for (std::size_t k = 0; k < nu;) {
    std::size_t end = k + 1;
    while (end < nu && at_zero[end - 1] - at_zero[end] <= tol) ++end;
    double s = 0.0;
    for (std::size_t q = k; q < end; ++q) s += at_zero[q];
    centers.push_back(s / static_cast<double>(end - k));
    k = end;
  }

  std::vector<FlatBand> out;
  for (const double mu : centers) {
    int m = static_cast<int>(nu);
    for (const auto& pr : probes) m = std::min(m, count_near(pr.data(), nu, mu, tol));
    if (m == 0) continue;
    std::vector<int> counts(points);
    for (std::size_t i = 0; i < points && m > 0; ++i) {
      counts[i] = count_near(samples.data() + i * nu, nu, mu, tol);
      m = std::min(m, counts[i]);
    }
    if (m == 0) continue;
    std::size_t excess = 0;
    for (int c : counts) excess += c > m ? 1 : 0;
    out.push_back({mu, m, excess});
  }
  std::sort(out.begin(), out.end(), [](const FlatBand& a, const FlatBand& b) { return a.value < b.value; });
  return out;
}

/// Removes `multiplicity` copies of every flat value from a descending list;
/// what remains is the descending list of non-constant eigenvalues.
inline EigList strip_flat(const double* ev, std::size_t nu, const std::vector<FlatBand>& flat) {
  std::vector<bool> removed(nu, false);
  for (const auto& f : flat) {
    for (int c = 0; c < f.multiplicity; ++c) {
      std::size_t best = nu;
      double best_d = 0.0;
      for (std::size_t k = 0; k < nu; ++k) {
        if (removed[k]) continue;
        const double d = std::abs(ev[k] - f.value);
        if (best == nu || d < best_d) {
          best = k;
          best_d = d;
        }
      }
      if (best < nu) removed[best] = true;
    }
  }
  EigList out;
  out.reserve(nu);
  for (std::size_t k = 0; k < nu; ++k) {
    if (!removed[k]) out.push_back(ev[k]);
  }
  return out;
}

/// Up to `count` grid-local minima (maxima if `largest`) of values on the
/// periodic grid, best first.
inline std::vector<std::size_t> grid_extrema(const double* values, int grid_n, int count, bool largest) {
  const auto n = static_cast<std::size_t>(grid_n);
  auto better = [&](std::size_t x, std::size_t y) {
    return largest ? values[x] > values[y] : values[x] < values[y];
  };
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a * n + b;
      bool extremal = true;
      for (std::size_t da = n - 1; da <= n + 1 && extremal; ++da) {
        for (std::size_t db = n - 1; db <= n + 1 && extremal; ++db) {
          const std::size_t j = ((a + da) % n) * n + (b + db) % n;
          extremal = j == i || !better(j, i);
        }
      }
      if (extremal) out.push_back(i);
    }
  }
  const auto k = std::min(out.size(), static_cast<std::size_t>(std::max(count, 1)));
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out.end(),
                    [&](std::size_t x, std::size_t y) { return better(x, y) || (values[x] == values[y] && x < y); });
  out.resize(k);
  return out;
}

inline void append_flat_bands(BandStructure& bs) {
  for (auto it = bs.flat.rbegin(); it != bs.flat.rend(); ++it) {
    for (int c = 0; c < it->multiplicity; ++c) bs.bands.push_back({it->value, it->value, {}, {}, true});
  }
}

}  // namespace detail

/// Flat bands: values mu that are eigenvalues of D(theta), with multiplicity
/// at least m, at every grid point (and two off-grid probes). The reported
/// multiplicity is the minimum count over the grid.
inline std::vector<FlatBand> flat_bands(const FundamentalGraph& g, int grid_n, double tol,
                                        const SpectrumOptions& opt = {}) {
  detail::check_grid(grid_n);
  if (!(tol > 0.0)) throw Error(Errc::BadParams, "flat tolerance must be positive");
  const FloquetAssembler fiber(g);
  const auto samples = detail::sample_grid(fiber, grid_n, opt.threads);
  const auto points = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
  return detail::detect_flat(fiber, samples, points, tol, opt.seed);
}

inline BandStructure band_structure(const FundamentalGraph& g, const SpectrumOptions& opt = {}) {
  detail::check_grid(opt.grid_n);
  const FloquetAssembler fiber(g);
  const auto nu = static_cast<std::size_t>(g.nu());
  const auto points = static_cast<std::size_t>(opt.grid_n) * static_cast<std::size_t>(opt.grid_n);
  auto samples = detail::sample_grid(fiber, opt.grid_n, opt.threads);

  BandStructure bs;
  bs.nu = g.nu();
  bs.grid_n = opt.grid_n;
  bs.flat = detail::detect_flat(fiber, samples, points, opt.flat_tol, opt.seed);
  const auto ac = static_cast<std::size_t>(bs.ac_count());

  // tracks[n * points + i]: n-th non-flat eigenvalue at grid point i.
  std::vector<double> tracks(ac * points);
  bs.bands.assign(ac, Band{});
  for (std::size_t i = 0; i < points; ++i) {
    const EigList track = detail::strip_flat(samples.data() + i * nu, nu, bs.flat);
    for (std::size_t n = 0; n < ac; ++n) {
      tracks[n * points + i] = track[n];
      Band& b = bs.bands[n];
      if (i == 0 || track[n] < b.lower) {
        b.lower = track[n];
        b.argmin = grid_theta(opt.grid_n, i);
      }
      if (i == 0 || track[n] > b.upper) {
        b.upper = track[n];
        b.argmax = grid_theta(opt.grid_n, i);
      }
    }
  }

  if (opt.refine) {
    PolishOptions po;
    po.radius = 2.0 * std::numbers::pi / opt.grid_n;
    po.max_evaluations = opt.polish_evaluations;
    const auto& flat = bs.flat;
    parallel_for(ac, opt.threads, [&](std::size_t n) {
      auto track_value = [&](Theta t) {
        const EigList ev = detail::descending_eigenvalues(fiber(t).dense());
        return detail::strip_flat(ev.data(), nu, flat)[n];
      };
      const double* values = tracks.data() + n * points;
      Band& b = bs.bands[n];
      for (const std::size_t i : detail::grid_extrema(values, opt.grid_n, opt.polish_starts, false)) {
        const LocalMin lo = polish_min(track_value, grid_theta(opt.grid_n, i), values[i], po);
        if (lo.value < b.lower) {
          b.lower = lo.value;
          b.argmin = lo.at;
        }
      }
      for (const std::size_t i : detail::grid_extrema(values, opt.grid_n, opt.polish_starts, true)) {
        const LocalMin hi = polish_max(track_value, grid_theta(opt.grid_n, i), values[i], po);
        if (hi.value > b.upper) {
          b.upper = hi.value;
          b.argmax = hi.at;
        }
      }
    });
  }
  detail::append_flat_bands(bs);
  if (opt.keep_samples) bs.samples = std::move(samples);
  return bs;
}

inline BandStructure band_structure(const FundamentalGraph& g, int grid_n) {
  SpectrumOptions opt;
  opt.grid_n = grid_n;
  return band_structure(g, opt);
}

/// 2 * sum_jk b_jk / sqrt(kappa_j kappa_k), with b counting oriented bridges.
/// Upper bound for the total length of the spectral bands.
inline double measure_estimate(const FundamentalGraph& g) {
  const BridgeTable b = bridges(g);
  double s = 0.0;
  for (int j = 1; j <= g.nu(); ++j) {
    for (int k = 1; k <= g.nu(); ++k) {
      if (b(j, k) != 0) s += b(j, k) / std::sqrt(static_cast<double>(g.degree(j)) * g.degree(k));
    }
  }
  return 2.0 * s;
}

/// Exact band endpoints when every bridge is a loop: upper endpoints are the
/// eigenvalues of D(0); lower endpoints are those of D(theta0) when one parity
/// rule fixes theta0 with cos<index, theta0> = -1 on every bridge, or minus
/// the eigenvalues of D(0) when the periodic graph is bipartite. Returns
/// nothing if the lower endpoints cannot be pinned down this way.
inline std::optional<BandStructure> loop_bridge_fast_path(const FundamentalGraph& g, double tol = 1e-9,
                                                         std::uint64_t seed = SpectrumOptions{}.seed) {
  bool all_odd1 = true, all_odd2 = true, all_odd_sum = true, any_bridge = false;
  for (const auto& e : g.edges()) {
    if (e.index.is_zero()) continue;
    if (!e.is_loop()) return std::nullopt;
    any_bridge = true;
    all_odd1 = all_odd1 && (e.index.t1 & 1) != 0;
    all_odd2 = all_odd2 && (e.index.t2 & 1) != 0;
    all_odd_sum = all_odd_sum && ((e.index.t1 + e.index.t2) & 1) != 0;
  }
  const FloquetAssembler fiber(g);
  const EigList upper = detail::descending_eigenvalues(fiber(Theta{}).dense());
  EigList lower;
  std::optional<Theta> theta0;
  constexpr double pi = std::numbers::pi;
  if (any_bridge && all_odd1) {
    theta0 = Theta{pi, 0.0};
  } else if (any_bridge && all_odd2) {
    theta0 = Theta{0.0, pi};
  } else if (any_bridge && all_odd_sum) {
    theta0 = Theta{pi, pi};
  }
  if (theta0) {
    lower = detail::descending_eigenvalues(fiber(*theta0).dense());
  } else if (is_bipartite_periodic(g)) {
    lower.resize(upper.size());
    for (std::size_t n = 0; n < upper.size(); ++n) lower[n] = -upper[upper.size() - 1 - n];
  } else {
    return std::nullopt;
  }

  BandStructure bs;
  bs.nu = g.nu();
  bs.exact = true;
  bs.theta0 = theta0;
  // Flat values are removed before pairing; the sorted remainders keep the
  // ordering D(theta0) <= D(theta) <= D(0).
  std::vector<double> ends(upper.begin(), upper.end());
  ends.insert(ends.end(), lower.begin(), lower.end());
  bs.flat = detail::detect_flat(fiber, ends, 2, tol, seed);
  for (auto& f : bs.flat) f.excess_points = 0;
  const auto nu = static_cast<std::size_t>(g.nu());
  const EigList hi = detail::strip_flat(upper.data(), nu, bs.flat);
  const EigList lo = detail::strip_flat(lower.data(), nu, bs.flat);
  for (std::size_t n = 0; n < hi.size(); ++n) {
    bs.bands.push_back({lo[n], hi[n], theta0.value_or(Theta{}), Theta{}, false});
  }
  detail::append_flat_bands(bs);
  return bs;
}

struct FlatBandEntry {
  double value = 0.0;
  int multiplicity = 0;
  bool embedded = false;
  std::size_t excess_points = 0;
};

struct SpectrumReport {
  std::string name;
  int nu = 0;
  int grid_n = 0;
  std::vector<Interval> bands;         // one per band, labeling order
  std::vector<Interval> ac_intervals;  // merged union of the non-constant bands
  std::vector<Interval> intervals;     // ac_intervals plus isolated flat points
  std::vector<FlatBandEntry> flat_bands;
  std::vector<Interval> gaps;          // open gaps between ac_intervals
  double measure = 0.0;
  double estimate = 0.0;
  bool bipartite_periodic = false;
  bool bipartite_fundamental = false;
  bool connected = false;
  bool symmetric = false;
};

inline SpectrumReport report_from_bands(const FundamentalGraph& g, const BandStructure& bs,
                                        const SpectrumOptions& opt = {}) {
  SpectrumReport r;
  r.name = g.name();
  r.nu = g.nu();
  r.grid_n = bs.grid_n;
  std::vector<Interval> ac;
  for (const auto& b : bs.bands) {
    r.bands.push_back(b.interval());
    if (!b.flat) ac.push_back(b.interval());
  }
  r.ac_intervals = merge_intervals(ac, opt.merge_tol);
  r.gaps = gaps_between(r.ac_intervals);

  std::vector<Interval> all = r.ac_intervals;
  for (const auto& f : bs.flat) {
    FlatBandEntry e{f.value, f.multiplicity, false, f.excess_points};
    bool inside = false;
    for (const auto& iv : r.ac_intervals) {
      e.embedded = e.embedded || iv.interior(f.value, opt.embed_tol);
      inside = inside || iv.contains(f.value, opt.merge_tol);
    }
    if (!inside) all.push_back({f.value, f.value});
    r.flat_bands.push_back(e);
  }
  r.intervals = merge_intervals(all, 0.0);
  r.measure = total_length(r.intervals);
  r.estimate = measure_estimate(g);
  r.bipartite_periodic = is_bipartite_periodic(g);
  r.bipartite_fundamental = is_bipartite_fundamental(g);
  r.connected = is_connected_periodic(g);

  r.symmetric = true;
  const auto& iv = r.intervals;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const auto& mirror = iv[iv.size() - 1 - i];
    r.symmetric = r.symmetric && std::abs(iv[i].lower + mirror.upper) <= opt.merge_tol &&
                  std::abs(iv[i].upper + mirror.lower) <= opt.merge_tol;
  }
  return r;
}

inline SpectrumReport report(const FundamentalGraph& g, const SpectrumOptions& opt = {}) {
  return report_from_bands(g, band_structure(g, opt), opt);
}

enum class CheckStatus { Pass, Fail, NotRequired };

inline constexpr const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotRequired: return "not-required";
  }
  return "?";
}

struct StructuralCheck {
  std::string property;
  CheckStatus status = CheckStatus::NotRequired;
  std::string detail;
};

/// True when every descending list of D(theta) on a coarse grid is
/// symmetric about zero.
inline bool fiberwise_symmetric(const FundamentalGraph& g, int grid_n = 24, double tol = 1e-9) {
  const FloquetAssembler fiber(g);
  const auto points = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
  for (std::size_t i = 0; i < points; ++i) {
    const EigList ev = detail::descending_eigenvalues(fiber(grid_theta(grid_n, i)).dense());
    for (std::size_t k = 0; k < ev.size(); ++k) {
      if (std::abs(ev[k] + ev[ev.size() - 1 - k]) > tol) return false;
    }
  }
  return true;
}

/// Evaluates the structural predictions that apply to g against a report.
inline std::vector<StructuralCheck> check_structural_predictions(const FundamentalGraph& g,
                                                                 const SpectrumReport& r,
                                                                 double tol = 1e-9) {
  std::vector<StructuralCheck> out;
  auto add = [&](std::string name, bool applies, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), !applies ? CheckStatus::NotRequired : ok ? CheckStatus::Pass : CheckStatus::Fail,
                   std::move(detail)});
  };
  int r_flat = 0;
  for (const auto& f : r.flat_bands) r_flat += f.multiplicity;

  const double top = r.bands.empty() ? 0.0 : r.bands.front().upper;
  const double first_lower = r.bands.empty() ? 0.0 : r.bands.front().lower;
  double max_upper = -2.0, min_lower = 2.0;
  for (const auto& b : r.bands) {
    max_upper = std::max(max_upper, b.upper);
    min_lower = std::min(min_lower, b.lower);
  }
  add("spectrum_within_unit_interval", true, max_upper <= 1.0 + tol && min_lower >= -1.0 - tol);
  add("top_of_spectrum_is_one", r.connected, std::abs(top - 1.0) <= tol, "lambda_1^+ = " + std::to_string(top));
  add("first_band_open", r.connected, first_lower < 1.0 - tol, "lambda_1^- = " + std::to_string(first_lower));
  bool one_flat = false;
  for (const auto& f : r.flat_bands) one_flat = one_flat || std::abs(f.value - 1.0) <= tol;
  add("one_is_not_flat", r.connected, !one_flat);
  add("flat_count_below_nu", r.connected, r_flat < r.nu);
  add("gap_count_bound", r.connected, static_cast<int>(r.gaps.size()) <= r.nu - r_flat - 1,
      std::to_string(r.gaps.size()) + " gaps, nu - r - 1 = " + std::to_string(r.nu - r_flat - 1));
  add("fiberwise_symmetry_if_bipartite_fundamental", r.bipartite_fundamental,
      r.bipartite_fundamental && fiberwise_symmetric(g));
  bool zero_flat = false;
  for (const auto& f : r.flat_bands) zero_flat = zero_flat || std::abs(f.value) <= tol;
  add("zero_flat_if_bipartite_odd_nu", r.bipartite_fundamental && r.nu > 1 && r.nu % 2 == 1, zero_flat);
  add("symmetric_if_bipartite_periodic", r.bipartite_periodic && r.connected, r.symmetric);
  add("measure_below_estimate", true, r.measure <= std::min(2.0, r.estimate) + tol,
      "measure " + std::to_string(r.measure) + ", estimate " + std::to_string(r.estimate));
  return out;
}

}  // namespace lapgraph
