#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lapgraph/lapgraph.hpp"
#include "support.hpp"

using namespace lapgraph;

namespace {

std::vector<Index2> indices_of(const FundamentalGraph& g) {
  std::vector<Index2> out;
  for (const auto& e : g.edges()) out.push_back(e.index);
  return out;
}

bool in_lattice(const HermiteBasis2& h, Index2 v) {
  std::int64_t rest = v.t2;
  if (h.a == 0) {
    if (v.t1 != 0) return false;
  } else {
    if (v.t1 % h.a != 0) return false;
    rest -= (v.t1 / h.a) * h.b;
  }
  return h.c == 0 ? rest == 0 : rest % h.c == 0;
}

}  // namespace

TEST(FundamentalGraph, SquareLatticeDegree) {
  const auto g = new_fundamental_graph(1, {{1, 1, {1, 0}}, {1, 1, {0, 1}}});
  EXPECT_EQ(g.degree(1), 4);
}

TEST(FundamentalGraph, GrapheneDegrees) {
  const auto g = hexagonal_lattice();
  EXPECT_EQ(g.degree(1), 3);
  EXPECT_EQ(g.degree(2), 3);
}

TEST(FundamentalGraph, SingleEdgeIsValid) {
  const auto g = new_fundamental_graph(2, {{1, 2, {0, 0}}});
  EXPECT_EQ(g.degree(1), 1);
  EXPECT_EQ(g.degree(2), 1);
}

TEST(FundamentalGraph, RejectsBadInput) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Format;
  };
  EXPECT_EQ(code_of([] { new_fundamental_graph(2, {{1, 3, {0, 0}}}); }), Errc::InvalidVertexId);
  EXPECT_EQ(code_of([] { new_fundamental_graph(2, {{0, 1, {0, 0}}}); }), Errc::InvalidVertexId);
  EXPECT_EQ(code_of([] { new_fundamental_graph(3, {{1, 2, {0, 0}}}); }), Errc::IsolatedVertex);
  EXPECT_EQ(code_of([] { new_fundamental_graph(0, {}); }), Errc::BadParams);
}

TEST(OrientedEdges, Square) {
  const auto oe = oriented_edges(square_lattice());
  ASSERT_EQ(oe.size(), 4u);
  std::vector<Index2> got;
  for (const auto& e : oe) got.push_back(e.index);
  std::sort(got.begin(), got.end());
  const std::vector<Index2> want{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  EXPECT_EQ(got, want);
}

TEST(OrientedEdges, ZeroLoop) {
  const auto oe = oriented_edges(new_fundamental_graph(1, {{1, 1, {0, 0}}}));
  ASSERT_EQ(oe.size(), 2u);
  EXPECT_TRUE(oe[0].index.is_zero());
  EXPECT_TRUE(oe[1].index.is_zero());
}

TEST(OrientedEdges, GrapheneReverseIndices) {
  std::vector<Index2> back;
  for (const auto& e : oriented_edges(hexagonal_lattice())) {
    if (e.tail == 2) back.push_back(e.index);
  }
  std::sort(back.begin(), back.end());
  const std::vector<Index2> want{{-1, 0}, {0, -1}, {0, 0}};
  EXPECT_EQ(back, want);
}

TEST(OrientedEdges, ClosedUnderReversalOnRandomGraphs) {
  for (const auto& g : fixtures::random_graphs(11, 40)) {
    const auto oe = oriented_edges(g);
    ASSERT_EQ(oe.size(), 2 * g.edges().size());
    for (const auto& e : oe) {
      const auto rev = std::count_if(oe.begin(), oe.end(), [&](const OrientedEdge& f) {
        return f.tail == e.head && f.head == e.tail && f.index == -e.index;
      });
      EXPECT_GE(rev, 1);
    }
  }
}

TEST(OrientedEdges, DegreeIsRowSumOfMultiplicities) {
  for (const auto& g : fixtures::random_graphs(12, 40)) {
    const auto m = edge_multiplicities(g);
    for (int j = 1; j <= g.nu(); ++j) {
      int s = 0;
      for (int k = 1; k <= g.nu(); ++k) s += m(j, k);
      EXPECT_EQ(s, g.degree(j));
    }
  }
}

TEST(Bridges, DecoratedSquare) {
  const auto b = bridges(decorated_square(5));
  for (int j = 1; j <= 5; ++j) {
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(b(j, k), j == 5 && k == 5 ? 4 : 0);
  }
}

TEST(Bridges, Graphene) {
  const auto b = bridges(hexagonal_lattice());
  EXPECT_EQ(b(1, 2), 2);
  EXPECT_EQ(b(2, 1), 2);
  EXPECT_EQ(b(1, 1), 0);
  EXPECT_EQ(b(2, 2), 0);
}

TEST(Bridges, ZeroIndicesGiveEmptyTable) {
  const auto g = new_fundamental_graph(2, {{1, 2, {0, 0}}, {1, 1, {0, 0}}});
  EXPECT_TRUE(bridges(g).all_zero());
  EXPECT_FALSE(is_connected_periodic(g));
}

TEST(Bridges, TotalIsEven) {
  for (const auto& g : fixtures::random_graphs(13, 40)) EXPECT_EQ(bridges(g).total() % 2, 0);
}

TEST(Bipartite, Fundamental) {
  EXPECT_TRUE(is_bipartite_fundamental(hexagonal_lattice()));
  EXPECT_FALSE(is_bipartite_fundamental(square_lattice()));
  EXPECT_TRUE(is_bipartite_fundamental(new_fundamental_graph(2, {{1, 2, {0, 0}}})));
  EXPECT_FALSE(is_bipartite_fundamental(kagome_lattice()));
}

TEST(Bipartite, Periodic) {
  EXPECT_TRUE(is_bipartite_periodic(square_lattice()));
  EXPECT_FALSE(is_bipartite_periodic(triangular_lattice()));
  EXPECT_TRUE(is_bipartite_periodic(perturbed_square_graph({2, 1})));
  EXPECT_FALSE(is_bipartite_periodic(perturbed_square_graph({1, 1})));
  EXPECT_TRUE(is_bipartite_periodic(hexagonal_lattice()));
  EXPECT_FALSE(is_bipartite_periodic(kagome_lattice()));
}

TEST(Connectivity, Catalog) {
  EXPECT_TRUE(is_connected_periodic(square_lattice()));
  EXPECT_TRUE(is_connected_periodic(hexagonal_lattice()));
  EXPECT_TRUE(is_connected_periodic(kagome_lattice()));
  EXPECT_FALSE(is_connected_periodic(new_fundamental_graph(1, {{1, 1, {2, 0}}})));
  EXPECT_FALSE(is_connected_periodic(new_fundamental_graph(1, {{1, 1, {1, 1}}, {1, 1, {1, -1}}})));
  EXPECT_TRUE(is_connected_periodic(new_fundamental_graph(1, {{1, 1, {2, 1}}, {1, 1, {1, 1}}})));
}

TEST(Connectivity, AgreesWithPatchSearch) {
  std::vector<FundamentalGraph> graphs = fixtures::random_graphs(14, 120);
  for (const auto& g : fixtures::catalog_sample()) graphs.push_back(g);
  int connected = 0;
  for (const auto& g : graphs) {
    const bool c = is_connected_periodic(g);
    connected += c ? 1 : 0;
    EXPECT_EQ(c, patch_connectivity(g, 9)) << to_json(g).dump();
  }
  // The sample must exercise both outcomes.
  EXPECT_GT(connected, 10);
  EXPECT_LT(connected, static_cast<int>(graphs.size()));
}

TEST(Hermite, Basics) {
  const std::vector<Index2> unit{{1, 0}, {0, 1}};
  EXPECT_TRUE(hermite_basis(unit).generates_z2());
  const std::vector<Index2> diag{{2, 0}, {0, 3}};
  EXPECT_EQ(hermite_basis(diag).index(), 6);
  const std::vector<Index2> unimodular{{2, 1}, {1, 1}};
  EXPECT_TRUE(hermite_basis(unimodular).generates_z2());
  const std::vector<Index2> line{{2, 4}, {-1, -2}};
  const auto h = hermite_basis(line);
  EXPECT_EQ(h.rank(), 1);
  EXPECT_EQ(h.a, 1);
  EXPECT_EQ(h.b, 2);
  EXPECT_EQ(hermite_basis(std::vector<Index2>{}).rank(), 0);
}

TEST(Hermite, IndexIsGcdOfMinorsAndGeneratorsAreContained) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<long> coord(-6, 6);
  std::uniform_int_distribution<int> count(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Index2> gens(static_cast<std::size_t>(count(rng)));
    for (auto& v : gens) v = {coord(rng), coord(rng)};
    std::int64_t minors = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        minors = std::gcd(minors, gens[i].t1 * gens[j].t2 - gens[i].t2 * gens[j].t1);
      }
    }
    const auto h = hermite_basis(gens);
    EXPECT_EQ(h.index(), minors);
    EXPECT_GE(h.a, 0);
    EXPECT_GE(h.c, 0);
    if (h.c > 0) {
      EXPECT_GE(h.b, 0);
      EXPECT_LT(h.b, h.c);
    }
    for (const auto& v : gens) EXPECT_TRUE(in_lattice(h, v));
  }
}

TEST(GaugeShift, Graphene) {
  const std::vector<Index2> offsets{{0, 0}, {1, 0}};
  const auto g = gauge_shift(hexagonal_lattice(), offsets);
  const std::vector<Index2> want{{1, 0}, {2, 0}, {1, 1}};
  EXPECT_EQ(indices_of(g), want);
}

TEST(GaugeShift, IdentityCases) {
  const std::vector<Index2> zero(3);
  EXPECT_EQ(gauge_shift(kagome_lattice(), zero), kagome_lattice());
  const std::vector<Index2> one{{5, -7}};
  EXPECT_EQ(gauge_shift(triangular_lattice(), one), triangular_lattice());
  EXPECT_THROW(gauge_shift(kagome_lattice(), one), Error);
}

TEST(GaugeShift, PreservesFiberSpectraAndConnectivity) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<long> coord(-3, 3);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  for (const auto& g : fixtures::random_graphs(17, 40)) {
    std::vector<Index2> offsets(static_cast<std::size_t>(g.nu()));
    for (auto& p : offsets) p = {coord(rng), coord(rng)};
    const auto h = gauge_shift(g, offsets);
    EXPECT_EQ(is_connected_periodic(g), is_connected_periodic(h));
    EXPECT_EQ(is_bipartite_periodic(g), is_bipartite_periodic(h));
    for (int s = 0; s < 10; ++s) {
      const Theta t{angle(rng), angle(rng)};
      const auto a = eigenvalues(assemble(g, t));
      const auto b = eigenvalues(assemble(h, t));
      for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
    }
  }
}

TEST(ScaleIndices, Basics) {
  EXPECT_EQ(scale_indices(kagome_lattice(), 1), kagome_lattice());
  const std::vector<Index2> want{{2, 0}, {0, 2}};
  EXPECT_EQ(indices_of(scale_indices(square_lattice(), 2)), want);
  EXPECT_THROW(scale_indices(square_lattice(), 0), Error);
}

TEST(ScaleIndices, FiberIdentity) {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  for (const auto& g : fixtures::random_graphs(19, 30)) {
    for (int n : {2, 3}) {
      const auto h = scale_indices(g, n);
      for (int s = 0; s < 5; ++s) {
        const Theta t{angle(rng), angle(rng)};
        const auto a = assemble(g, t.scaled(n)).dense();
        const auto b = assemble(h, t).dense();
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(AddEdge, SquarePlusDiagonalIsTriangular) {
  const auto g = add_edge(square_lattice(), 1, 1, {1, 1});
  EXPECT_EQ(g, triangular_lattice());
  EXPECT_EQ(g.degree(1), 6);
  EXPECT_THROW(add_edge(square_lattice(), 1, 2, {0, 0}), Error);
}

TEST(Subdivide, SquareOnce) {
  const auto g = subdivide_all_edges(square_lattice(), 1);
  ASSERT_EQ(g.nu(), 3);
  EXPECT_EQ(g.degree(1), 4);
  EXPECT_EQ(g.degree(2), 2);
  EXPECT_EQ(g.degree(3), 2);
  ASSERT_EQ(g.edges().size(), 4u);
  EXPECT_EQ(g.edges()[0].index, (Index2{0, 0}));
  EXPECT_EQ(g.edges()[1].index, (Index2{1, 0}));
  EXPECT_TRUE(is_connected_periodic(g));
  EXPECT_TRUE(is_bipartite_fundamental(g));
  EXPECT_THROW(subdivide_all_edges(square_lattice(), 0), Error);
}

TEST(Catalog, Kagome) {
  const auto g = catalog("kagome");
  ASSERT_EQ(g.nu(), 3);
  const std::vector<Index2> want{{0, 0}, {-1, 0}, {0, 0}, {0, -1}, {0, 0}, {1, -1}};
  EXPECT_EQ(indices_of(g), want);
  for (int j = 1; j <= 3; ++j) EXPECT_EQ(g.degree(j), 4);
}

TEST(Catalog, DecoratedSquare) {
  const auto g = catalog("decorated-square", {{"nu", "5"}});
  EXPECT_EQ(g.degree(5), 8);
  for (int j = 1; j <= 4; ++j) EXPECT_EQ(g.degree(j), 1);
}

TEST(Catalog, ProductTwoVertex) {
  const auto g = catalog("product-two-vertex", {{"d1", "0,-1,2"}, {"d2", "0,-1,2"}});
  EXPECT_EQ(g.edges().size(), 9u);
  EXPECT_EQ(g.degree(1), 9);
}

TEST(Catalog, Errors) {
  EXPECT_THROW(catalog("honeycomb-ish"), Error);
  try {
    catalog("decorated-square", {{"nu", "1"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadParams);
  }
  try {
    catalog("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownFamily);
  }
  EXPECT_THROW(catalog("decorated-square", {{"nu", "x"}}), Error);
  EXPECT_THROW(catalog("perturbed-graphene", {{"attach", "side"}}), Error);
}

TEST(Catalog, AllNamesBuild) {
  const CatalogParams p{{"nu", "3"}, {"N", "2"}, {"d1", "0,1"}, {"d2", "0,1"}, {"t1", "1"}, {"t2", "0"}};
  for (const auto& name : catalog_names()) EXPECT_NO_THROW(catalog(name, p)) << name;
}

TEST(GraphFile, RoundTrip) {
  for (const auto& g : fixtures::catalog_sample()) {
    const auto back = parse_graph(to_json(g).dump());
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.name(), g.name());
  }
}

TEST(GraphFile, Errors) {
  auto code_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Io;
  };
  EXPECT_EQ(code_of("{"), Errc::Format);
  EXPECT_EQ(code_of(R"({"nu": 1})"), Errc::Format);
  EXPECT_EQ(code_of(R"({"nu": 1, "edges": [[1, 1, 0]]})"), Errc::Format);
  EXPECT_EQ(code_of(R"({"nu": 1, "edges": [[1, 1, 0.5, 0]]})"), Errc::Format);
  EXPECT_EQ(code_of(R"({"nu": 2, "edges": [[1, 1, 1, 0]]})"), Errc::IsolatedVertex);
  try {
    load_graph("/nonexistent/g.graph");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Io);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/g.graph"), std::string::npos);
  }
}
