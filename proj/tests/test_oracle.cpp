#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "lapgraph/lapgraph.hpp"
#include "support.hpp"

using namespace lapgraph;

TEST(Quotient, SquareLatticeTwoByTwo) {
  const auto ev = quotient_eigenvalues(square_lattice(), 2);
  ASSERT_EQ(ev.size(), 4u);
  const double want[] = {-1.0, 0.0, 0.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], want[i], 1e-12);
}

TEST(Quotient, GrapheneThreeByThreeHasDiracZeros) {
  const auto ev = quotient_eigenvalues(hexagonal_lattice(), 3);
  const auto zeros = std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) < 1e-10; });
  EXPECT_GE(zeros, 2);
}

TEST(Quotient, MatrixIsSymmetricWithDegreeWeights) {
  const auto L = quotient_laplacian(kagome_lattice(), 3);
  EXPECT_EQ(L.rows(), 27);
  EXPECT_LT((L - L.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  // Every row sums to 1 when all degrees are equal (here 4).
  for (Eigen::Index i = 0; i < L.rows(); ++i) EXPECT_NEAR(L.row(i).sum(), 1.0, 1e-14);
}

TEST(Quotient, Errors) {
  try {
    quotient_eigenvalues(square_lattice(), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadParams);
  }
  try {
    quotient_laplacian(decorated_square(8), 23);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionTooLarge);
  }
  EXPECT_NO_THROW(quotient_laplacian(square_lattice(), 64));
}

TEST(Quotient, MatchesFiberUnion) {
  auto graphs = fixtures::catalog_sample();
  for (auto& g : fixtures::random_graphs(31, 50)) graphs.push_back(std::move(g));
  for (const auto& g : graphs) {
    for (int n : {2, 3, 4, 6}) {
      const auto q = quotient_eigenvalues(g, n);
      ASSERT_EQ(q.size(), static_cast<std::size_t>(g.nu() * n * n));
      EXPECT_LE(quotient_discrepancy(g, n), 1e-8) << to_json(g).dump() << " N=" << n;
      EXPECT_GE(q.front(), -1.0 - 1e-9);
      EXPECT_LE(q.back(), 1.0 + 1e-9);
    }
  }
}

TEST(Quotient, MatchesSampledGrid) {
  // The spectrum grid -pi + 2 pi k / n is a full residue system mod 2 pi.
  for (const auto& g : {kagome_lattice(), decorated_square(3), fixtures::random_graphs(32, 1).front()}) {
    const int n = 6;
    SpectrumOptions o;
    o.grid_n = n;
    o.keep_samples = true;
    o.refine = false;
    auto samples = band_structure(g, o).samples;
    std::sort(samples.begin(), samples.end());
    const auto q = quotient_eigenvalues(g, n);
    ASSERT_EQ(samples.size(), q.size());
    for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(samples[i], q[i], 1e-8);
  }
}

TEST(Patch, Examples) {
  EXPECT_TRUE(patch_connectivity(square_lattice(), 9));
  EXPECT_FALSE(patch_connectivity(new_fundamental_graph(1, {{1, 1, {2, 0}}}), 9));
  EXPECT_TRUE(patch_connectivity(kagome_lattice(), 9));
  EXPECT_TRUE(patch_connectivity(hexagonal_lattice(), 6));
  try {
    patch_connectivity(new_fundamental_graph(1, {{1, 1, {2, 0}}, {1, 1, {0, 1}}}), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadParams);
  }
}
