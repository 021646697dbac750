#include "qtda/complex.hpp"

#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "qtda/errors.hpp"

using namespace qtda;

namespace {

SimplicialComplex worked_example() {
  return complex_from_simplices(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {0, 1, 2}});
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

std::vector<std::vector<bool>> adjacency(const NeighborhoodGraph& g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (const auto& e : g.edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  return adj;
}

}  // namespace

TEST(PointCloud, RejectsRaggedAndZeroDimensional) {
  EXPECT_THROW(PointCloud({{1.0, 2.0}, {1.0}}), ArgumentError);
  EXPECT_THROW(PointCloud({{}, {}}), ArgumentError);
  EXPECT_NO_THROW(PointCloud({{1.0, 2.0}, {3.0, 4.0}}));
}

TEST(RipsGraph, ThresholdIsInclusive) {
  PointCloud cloud({{0.0, 0.0}, {3.0, 4.0}, {10.0, 0.0}});
  const auto g = build_rips_graph(cloud, 5.0);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (Edge{0, 1}));
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_TRUE(build_rips_graph(cloud, 4.999).edges.empty());
  EXPECT_THROW(build_rips_graph(cloud, -1.0), ArgumentError);
}

TEST(BuildComplex, TriangleGraphHasOneTwoSimplex) {
  const auto c = build_complex(make_graph(4, {{1, 2}, {1, 3}, {2, 3}}), 2);
  ASSERT_EQ(c.count(2), 1u);
  EXPECT_EQ(c.simplices(2)[0], (Simplex{1, 2, 3}));
  EXPECT_EQ(c.count(0), 4u);
}

TEST(BuildComplex, EdgelessGraph) {
  const auto c = build_complex(make_graph(4, {}), 3);
  EXPECT_EQ(c.count(0), 4u);
  EXPECT_EQ(c.count(1), 0u);
  EXPECT_EQ(c.count(7), 0u);
}

TEST(BuildComplex, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const auto c = random_complex(n, 0.6, n - 1, seed);
    const auto want = oracle::cliques(n, adjacency(c.graph()));
    for (int k = 0; k < n; ++k) {
      ASSERT_EQ(c.simplices(k), want[k]) << "seed " << seed << " k " << k;
    }
  }
}

TEST(BuildComplex, ClosedUnderFaces) {
  const auto c = random_complex(8, 0.7, 7, 3);
  for (int k = 1; k <= c.max_dim(); ++k) {
    for (const auto& s : c.simplices(k)) {
      for (std::size_t t = 0; t < s.size(); ++t) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        EXPECT_GE(c.index_of(face), 0);
      }
    }
  }
}

TEST(ComplexFromSimplices, ValidatesInput) {
  EXPECT_THROW(complex_from_simplices(3, {{0, 1, 2}}), ArgumentError);
  EXPECT_THROW(complex_from_simplices(3, {{1, 0}}), ArgumentError);
  EXPECT_THROW(complex_from_simplices(3, {{0, 3}}), ArgumentError);
  const auto c = complex_from_simplices(3, {{1, 2}, {0, 1}});
  EXPECT_EQ(c.count(0), 3u);
  EXPECT_EQ(c.simplices(1)[0], (Simplex{0, 1}));
}

TEST(WorkedExample, BoundaryOperatorsMatchReference) {
  const auto c = worked_example();
  EXPECT_EQ(c.count(1), 6u);
  EXPECT_EQ(c.count(2), 1u);
  const IntMatrix d1 = from_rows({{1, 1, 0, 0, 0, 0},
                                  {-1, 0, 1, 0, 0, 0},
                                  {0, -1, -1, 1, 1, 0},
                                  {0, 0, 0, -1, 0, 1},
                                  {0, 0, 0, 0, -1, -1}});
  const IntMatrix d2 = from_rows({{1}, {-1}, {1}, {0}, {0}, {0}});
  EXPECT_EQ(boundary_matrix(c, 1).entries, d1);
  EXPECT_EQ(boundary_matrix(c, 2).entries, d2);
}

TEST(WorkedExample, LaplacianAndBetti) {
  const auto c = worked_example();
  const IntMatrix want = from_rows({{3, 0, 0, 0, 0, 0},
                                    {0, 3, 0, -1, -1, 0},
                                    {0, 0, 3, -1, -1, 0},
                                    {0, -1, -1, 2, 1, -1},
                                    {0, -1, -1, 1, 2, 1},
                                    {0, 0, 0, -1, 1, 2}});
  EXPECT_EQ(laplacian(c, 1).entries, want);
  EXPECT_EQ(exact_betti(c, 0), 1);
  EXPECT_EQ(exact_betti(c, 1), 1);
  EXPECT_EQ(exact_betti(c, 2), 0);
}

TEST(Boundary, ErrorsOnEmptyDimension) {
  const auto c = build_complex(make_graph(3, {}), 2);
  EXPECT_THROW(boundary_matrix(c, 1), EmptyDimensionError);
  EXPECT_THROW(laplacian(c, 1), EmptyDimensionError);
  EXPECT_THROW(boundary_matrix(c, 0), ArgumentError);
  EXPECT_EQ(exact_betti(c, 1), 0);
}

TEST(BoundaryProperty, BoundaryOfBoundaryIsZero) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const auto c = random_complex(n, 0.7, n - 1, seed);
    for (int k = 2; k <= c.max_dim(); ++k) {
      if (c.count(k) == 0) break;
      const IntMatrix prod = boundary_matrix(c, k - 1).entries * boundary_matrix(c, k).entries;
      ASSERT_TRUE(prod.isZero()) << "seed " << seed << " k " << k;
    }
  }
}

TEST(LaplacianProperty, SymmetricPositiveSemidefinite) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = random_complex(7, 0.6, 6, seed);
    for (int k = 0; k <= c.max_dim() && c.count(k) > 0; ++k) {
      const auto lap = laplacian(c, k);
      ASSERT_EQ(lap.entries, lap.entries.transpose());
      const Eigen::MatrixXd l = lap.real();
      for (int trial = 0; trial < 1000; ++trial) {
        Eigen::VectorXd x(l.rows());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = g(rng);
        ASSERT_GE(x.dot(l * x), -1e-9);
      }
    }
  }
}

TEST(BettiProperty, EulerPoincare) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const auto c = random_complex(n, 0.55, n - 1, seed);
    long chi_cells = 0, chi_betti = 0;
    for (int k = 0; k <= c.max_dim(); ++k) {
      const long sign = (k % 2 == 0) ? 1 : -1;
      chi_cells += sign * static_cast<long>(c.count(k));
      chi_betti += sign * exact_betti(c, k);
    }
    ASSERT_EQ(chi_cells, chi_betti) << "seed " << seed;
  }
}

TEST(BettiProperty, RoutesAgreeWithFloatingRankOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto c = random_complex(7, 0.5, 6, seed);
    for (int k = 0; k <= c.max_dim() && c.count(k) > 0; ++k) {
      const Eigen::Index down = k >= 1 ? oracle::float_rank(boundary_matrix(c, k).entries.cast<double>()) : 0;
      const Eigen::Index up =
          c.count(k + 1) > 0 ? oracle::float_rank(boundary_matrix(c, k + 1).entries.cast<double>()) : 0;
      const int want = static_cast<int>(c.count(k) - down - up);
      EXPECT_EQ(exact_betti(c, k), want);
      EXPECT_EQ(betti_by_rank(c, k), want);
      EXPECT_EQ(betti_by_eigenvalues(c, k), want);
    }
  }
}

TEST(Betti, KnownShapes) {
  const auto hollow = build_complex(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2);
  EXPECT_EQ(exact_betti(hollow, 0), 1);
  EXPECT_EQ(exact_betti(hollow, 1), 1);

  const auto filled = build_complex(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 2);
  EXPECT_EQ(exact_betti(filled, 1), 0);

  const auto two = build_complex(make_graph(4, {{0, 1}, {2, 3}}), 1);
  EXPECT_EQ(exact_betti(two, 0), 2);

  // Octahedron: K_{2,2,2}, a triangulated sphere.
  std::vector<Edge> edges;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (v != u + 3) edges.push_back({u, v});
  const auto sphere = build_complex(make_graph(6, edges), 3);
  EXPECT_EQ(sphere.count(3), 0u);
  EXPECT_EQ(exact_betti(sphere, 0), 1);
  EXPECT_EQ(exact_betti(sphere, 1), 0);
  EXPECT_EQ(exact_betti(sphere, 2), 1);
}

TEST(IntegerRank, SurvivesOverflowingIntermediates) {
  const std::int64_t big = 3'000'000'007LL;
  IntMatrix m(4, 4);
  m << big, 7, big - 1, 2,
       5, big, 3, big + 2,
       big + 5, big + 7, big + 2, big + 4,  // row0 + row1
       1, 2, 3, 4;
  EXPECT_EQ(integer_rank(m), 3);
  m(3, 3) = 5;
  EXPECT_EQ(integer_rank(m), 3);
  IntMatrix full = IntMatrix::Identity(4, 4) * big;
  full(0, 3) = big - 1;
  EXPECT_EQ(integer_rank(full), 4);
}

TEST(RandomComplex, DeterministicInSeed) {
  const auto a = random_complex(9, 0.5, 8, 42);
  const auto b = random_complex(9, 0.5, 8, 42);
  for (int k = 0; k < 9; ++k) EXPECT_EQ(a.simplices(k), b.simplices(k));
  EXPECT_EQ(random_complex(6, 0.0, 5, 1).count(1), 0u);
  EXPECT_EQ(random_complex(6, 1.0, 5, 1).count(5), 1u);
  EXPECT_THROW(random_complex(6, 1.5, 5, 1), ArgumentError);
}

TEST(ComplexJson, ListsSimplicesByDimension) {
  const auto j = nlohmann::json::parse(complex_to_json(worked_example()));
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["simplices"]["1"].size(), 6u);
  EXPECT_EQ(j["simplices"]["2"][0], nlohmann::json({0, 1, 2}));
}
