#include <cmath>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "toprisk/filtration.hpp"
#include "toprisk/persistence.hpp"

using namespace toprisk;

namespace {

DistanceMatrix unit_square() { return testkit::euclidean_dm({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PersistenceDiagramSet explicit_ph(const DistanceMatrix& dm, int max_dim = 2) {
  return compute_persistence(build_rips_filtration(dm, max_dim));
}

std::vector<double> finite_deaths(const Diagram& d) {
  std::vector<double> out;
  for (const auto& p : d)
    if (!p.essential()) out.push_back(p.death);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(ComputePersistence, TwoPoints) {
  DistanceMatrix dm(2);
  dm.set(0, 1, 2.5);
  const auto d = explicit_ph(dm);
  EXPECT_EQ(d[0], (Diagram{{0.0, 2.5}, {0.0, kInfinity}}));
  EXPECT_TRUE(d[1].empty());
  EXPECT_TRUE(d[2].empty());
}

TEST(ComputePersistence, UnitSquare) {
  const auto d = explicit_ph(unit_square(), 1);
  ASSERT_EQ(d[1].size(), 1u);
  EXPECT_NEAR(d[1][0].birth, 1.0, 1e-12);
  EXPECT_NEAR(d[1][0].death, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(d[0].size(), 4u);
  EXPECT_EQ(std::count_if(d[0].begin(), d[0].end(), [](auto& p) { return p.essential(); }), 1);
}

TEST(ComputePersistence, OctahedronHasOneVoid) {
  // Vertices of the regular octahedron: at scale 1 (edges of length sqrt 2
  // after scaling) the Rips complex is the boundary sphere.
  const auto d = explicit_ph(testkit::euclidean_dm(
      {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}));
  ASSERT_EQ(d[2].size(), 1u);
  EXPECT_NEAR(d[2][0].birth, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d[2][0].death, 2.0, 1e-12);
  EXPECT_TRUE(d[1].empty());
}

TEST(ComputePersistence, ZeroPersistenceSuppressed) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = explicit_ph(distance_matrix(testkit::random_cloud(8, 2, rng)));
    for (int q = 0; q <= 2; ++q)
      for (const auto& p : d[q]) EXPECT_GT(p.death, p.birth);
    for (const auto& p : d[0]) EXPECT_EQ(p.birth, 0.0);
    EXPECT_EQ(std::count_if(d[0].begin(), d[0].end(), [](auto& p) { return p.essential(); }), 1);
  }
}

TEST(ComputePersistence, MaxDimLimitsOutput) {
  const auto dm = testkit::euclidean_dm({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  const auto d0 = explicit_ph(dm, 0);
  EXPECT_EQ(d0[0].size(), 6u);
  EXPECT_TRUE(d0[1].empty());
  EXPECT_TRUE(d0[2].empty());
}

TEST(ComputePersistence, RejectsMalformedFiltration) {
  auto f = build_rips_filtration(unit_square(), 1);
  std::swap(f.simplices.front(), f.simplices.back());
  try {
    compute_persistence(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Internal);
  }

  // Same values, but an edge listed before one of its vertices.
  Filtration g;
  g.max_dim = 1;
  g.simplices = {Simplex{{0, 0, 0, 0}, 0, 0.0}, Simplex{{0, 1, 0, 0}, 1, 0.0}, Simplex{{1, 0, 0, 0}, 0, 0.0}};
  EXPECT_THROW(compute_persistence(g), Error);
}

TEST(ComputePersistence, H0MatchesMinimumSpanningTree) {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dm = distance_matrix(testkit::random_cloud(2 + rng.below(11), 1 + rng.below(4), rng));
    const auto deaths = finite_deaths(explicit_ph(dm, 0)[0]);
    const auto mst = testkit::mst_edge_lengths(dm);
    ASSERT_EQ(deaths.size(), mst.size());
    for (std::size_t i = 0; i < mst.size(); ++i) EXPECT_NEAR(deaths[i], mst[i], 1e-9);
  }
}

TEST(BettiNumbersAt, Examples) {
  const auto f = build_rips_filtration(unit_square(), 1);
  EXPECT_EQ(betti_numbers_at(f, 1.0), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(betti_numbers_at(f, std::sqrt(2.0)), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(betti_numbers_at(f, 0.5), (std::vector<std::size_t>{4, 0}));
  EXPECT_THROW(betti_numbers_at(f, -1.0), Error);
}

TEST(BettiNumbersAt, AgreesWithIndependentOracle) {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const auto dm = distance_matrix(testkit::random_cloud(3 + rng.below(6), 2 + rng.below(3), rng));
    const auto f = build_rips_filtration(dm, 2);
    for (int step = 0; step <= 10; ++step) {
      const double eps = f.threshold * step / 10.0;
      const auto got = betti_numbers_at(f, eps);
      const auto want = testkit::rips_betti_oracle(dm, eps);
      for (int q = 0; q <= 2; ++q) EXPECT_EQ(got[q], want[q]) << "q=" << q << " eps=" << eps;
    }
  }
}

TEST(ComputePersistence, PairingMatchesBettiNumbers) {
  SplitMix64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const auto dm = distance_matrix(testkit::random_cloud(2 + rng.below(7), 2 + rng.below(3), rng));
    const auto d = explicit_ph(dm);
    for (int step = 0; step < 20; ++step) {
      const double eps = d.threshold * step / 19.0;
      const auto want = testkit::rips_betti_oracle(dm, eps);
      for (int q = 0; q <= 2; ++q) EXPECT_EQ(testkit::alive_at(d, q, eps), want[q]) << "q=" << q << " eps=" << eps;
    }
  }
}

TEST(ComputePersistence, EulerCharacteristic) {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    // Four points never span a 4-simplex, so max_dim 2 covers everything.
    const auto dm = distance_matrix(testkit::random_cloud(4, 3, rng));
    const auto f = build_rips_filtration(dm, 2);
    long chi_cells = 0;
    for (int k = 0; k <= 3; ++k) chi_cells += (k % 2 ? -1 : 1) * static_cast<long>(f.count_dim(k));
    const auto betti = betti_numbers_at(f, f.threshold);
    const auto d = compute_persistence(f);
    long chi_betti = 0, chi_pairs = 0;
    for (int q = 0; q <= 2; ++q) {
      chi_betti += (q % 2 ? -1 : 1) * static_cast<long>(betti[q]);
      chi_pairs += (q % 2 ? -1 : 1) * static_cast<long>(testkit::alive_at(d, q, f.threshold));
    }
    EXPECT_EQ(chi_cells, chi_betti);
    EXPECT_EQ(chi_cells, chi_pairs);
  }
}
