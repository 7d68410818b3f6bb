#pragma once

// Floquet fibers of the periodic Laplacian: for each quasimomentum theta the
// nu x nu Hermitian matrix
//   D_jk(theta) = (kappa_j kappa_k)^{-1/2} * sum_{e = (v_j, v_k)} exp(i <index(e), theta>).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "lapgraph/error.hpp"
#include "lapgraph/graph.hpp"

namespace lapgraph {

using Complex = std::complex<double>;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double r = x - two_pi * std::round(x / two_pi);
  return r <= -std::numbers::pi ? std::numbers::pi : r;
}

/// Quasimomentum on the torus [-pi, pi]^2. Stored in canonical form.
struct Theta {
  double t1 = 0.0;
  double t2 = 0.0;

  Theta() = default;
  Theta(double a, double b) : t1(wrap_angle(a)), t2(wrap_angle(b)) {}

  /// <index, theta>
  double dot(Index2 tau) const noexcept {
    return static_cast<double>(tau.t1) * t1 + static_cast<double>(tau.t2) * t2;
  }
  Theta operator-() const { return {-t1, -t2}; }
  Theta scaled(double n) const { return {n * t1, n * t2}; }
};

/// Hermitian fiber matrix. Built only through `assemble` (Hermitian by
/// construction) or `from_dense` (checked when eigenvalues are requested).
class FloquetMatrix {
 public:
  FloquetMatrix() = default;
  explicit FloquetMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  /// 1-based entry access, matching vertex ids.
  Complex operator()(int j, int k) const { return m_(j - 1, k - 1); }
  const Eigen::MatrixXcd& dense() const noexcept { return m_; }

  double hermitian_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXcd m_;
};

/// Edge data pre-digested for repeated assembly at many theta.
class FloquetAssembler {
 public:
  explicit FloquetAssembler(const FundamentalGraph& g) : nu_(g.nu()) {
    for (const auto& e : g.edges()) {
      int j = e.tail - 1, k = e.head - 1;
      Index2 tau = e.index;
      if (j > k) {
        std::swap(j, k);
        tau = -tau;
      }
      const double w = 1.0 / std::sqrt(static_cast<double>(g.degree(j + 1)) * g.degree(k + 1));
      terms_.push_back({j, k, tau, w});
    }
  }

  int nu() const noexcept { return nu_; }

  FloquetMatrix operator()(Theta theta) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nu_, nu_);
    for (const auto& t : terms_) {
      const double phase = theta.dot(t.tau);
      if (t.j == t.k) {
        // Both orientations of a loop: e^{i x} + e^{-i x}.
        m(t.j, t.j) += 2.0 * t.weight * std::cos(phase);
      } else {
        m(t.j, t.k) += t.weight * Complex(std::cos(phase), std::sin(phase));
      }
    }
    for (int j = 0; j < nu_; ++j) {
      for (int k = j + 1; k < nu_; ++k) m(k, j) = std::conj(m(j, k));
    }
    return FloquetMatrix(std::move(m));
  }

 private:
  struct Term {
    int j;
    int k;
    Index2 tau;  // orientation j -> k with j <= k
    double weight;
  };
  int nu_;
  std::vector<Term> terms_;
};

inline FloquetMatrix assemble(const FundamentalGraph& g, Theta theta) { return FloquetAssembler(g)(theta); }

/// D(0): the normalized Laplacian of the fundamental graph itself.
inline FloquetMatrix laplacian_at_zero(const FundamentalGraph& g) { return assemble(g, Theta{}); }

/// Eigenvalues sorted in decreasing order.
using EigList = std::vector<double>;

namespace detail {

inline EigList descending_eigenvalues(const Eigen::MatrixXcd& m) {
  EigList out(static_cast<std::size_t>(m.rows()));
  if (m.rows() == 1) {
    out[0] = m(0, 0).real();
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[static_cast<std::size_t>(ev.size() - 1 - i)] = ev(i);
  return out;
}

}  // namespace detail

inline constexpr double kHermitianTolerance = 1e-9;

inline EigList eigenvalues(const FloquetMatrix& m) {
  if (m.dim() == 0) return {};
  const double defect = m.hermitian_defect();
  if (defect > kHermitianTolerance) {
    throw Error(Errc::NotHermitian, "matrix deviates from its adjoint by " + std::to_string(defect));
  }
  return detail::descending_eigenvalues(m.dense());
}

/// Smallest singular value of (m - lambda I).
inline double min_singular_value(const FloquetMatrix& m, double lambda) {
  Eigen::MatrixXcd shifted = m.dense() - lambda * Eigen::MatrixXcd::Identity(m.dim(), m.dim());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

}  // namespace lapgraph
