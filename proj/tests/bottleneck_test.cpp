#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "toprisk/bottleneck.hpp"
#include "toprisk/random.hpp"
#include "toprisk/tvard.hpp"

using namespace toprisk;

namespace {

Diagram random_diagram(SplitMix64& rng, std::size_t max_size) {
  Diagram d;
  const std::size_t n = rng.below(max_size + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = rng.unit();
    d.push_back({b, b + rng.unit()});
  }
  return d;
}

// Exhaustive search over all ways to match points of a into b or the
// diagonal; tiny diagrams only.
double brute_bottleneck(const Diagram& a, const Diagram& b) {
  auto cost = [](const PersistencePair& p, const PersistencePair& q) {
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
  };
  auto diag = [](const PersistencePair& p) { return (p.death - p.birth) / 2; };
  double best = kInfinity;
  std::vector<bool> used(b.size(), false);
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double worst) {
    if (worst >= best) return;
    if (i == a.size()) {
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) worst = std::max(worst, diag(b[j]));
      best = std::min(best, worst);
      return;
    }
    go(i + 1, std::max(worst, diag(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j]) {
        used[j] = true;
        go(i + 1, std::max(worst, cost(a[i], b[j])));
        used[j] = false;
      }
  };
  go(0, 0.0);
  return best;
}

}  // namespace

TEST(Bottleneck, Examples) {
  const Diagram d{{0, 2}, {0.5, 1}};
  EXPECT_EQ(bottleneck_distance(d, d), 0.0);
  EXPECT_EQ(bottleneck_distance(Diagram{{0, 2}}, Diagram{}), 1.0);
  EXPECT_EQ(bottleneck_distance(Diagram{}, Diagram{{0, 2}}), 1.0);
  EXPECT_EQ(bottleneck_distance(Diagram{}, Diagram{}), 0.0);
  EXPECT_EQ(bottleneck_distance(Diagram{{0, 4}}, Diagram{{0.5, 4.25}}), 0.5);
}

TEST(Bottleneck, RejectsInfiniteDeaths) {
  EXPECT_THROW(bottleneck_distance(Diagram{{0, kInfinity}}, Diagram{}), Error);
}

TEST(Bottleneck, SymmetricAndMatchesExhaustiveSearch) {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_diagram(rng, 5), b = random_diagram(rng, 5);
    const double ab = bottleneck_distance(a, b);
    EXPECT_EQ(ab, bottleneck_distance(b, a));
    EXPECT_DOUBLE_EQ(ab, brute_bottleneck(a, b));
  }
}

TEST(Bottleneck, TriangleInequality) {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_diagram(rng, 8), b = random_diagram(rng, 8), c = random_diagram(rng, 8);
    EXPECT_LE(bottleneck_distance(a, b), bottleneck_distance(a, c) + bottleneck_distance(c, b) + 1e-12);
  }
}

TEST(Bottleneck, ZeroWheneverTvardIsZero) {
  SplitMix64 rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    PersistenceDiagramSet x;
    x.threshold = 3;
    for (int q = 0; q <= 2; ++q) x[q] = random_diagram(rng, 6);
    PersistenceDiagramSet y = x;
    std::reverse(y[1].begin(), y[1].end());
    const auto [a, b] = vectorize(x, y);
    ASSERT_EQ(tvard_distance(a, b), 0.0);
    for (int q = 0; q <= 2; ++q) EXPECT_EQ(bottleneck_distance(cap_diagram(x[q], a.cap), cap_diagram(y[q], a.cap)), 0.0);
  }
}
