#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "toprisk/point_cloud.hpp"

using namespace toprisk;

namespace {

std::vector<std::vector<double>> points_of(const PointCloud& c) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(c.point(i).begin(), c.point(i).end());
  return out;
}

}  // namespace

TEST(DelayEmbed, SlidingWindow) {
  const std::vector<double> s{1, 2, 3, 4};
  EXPECT_EQ(points_of(delay_embed(s, 2, 1)), (std::vector<std::vector<double>>{{1, 2}, {2, 3}, {3, 4}}));
}

TEST(DelayEmbed, WindowEqualsLength) {
  const std::vector<double> s(10, 0.25);
  const auto c = delay_embed(s, 10, 1);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.dimension(), 10u);
}

TEST(DelayEmbed, StrideSkips) {
  const std::vector<double> s{1, 2, 3, 4, 5};
  EXPECT_EQ(points_of(delay_embed(s, 2, 2)), (std::vector<std::vector<double>>{{1, 2}, {3, 4}}));
}

TEST(DelayEmbed, PointCount) {
  for (std::size_t len = 10; len < 40; ++len)
    for (std::size_t w = 1; w <= 10; ++w)
      for (std::size_t stride = 1; stride <= 4; ++stride)
        EXPECT_EQ(delay_embed(std::vector<double>(len, 0.0), w, stride).size(), (len - w) / stride + 1);
  EXPECT_EQ(delay_embed(std::vector<double>(250, 0.0), 10, 1).size(), 241u);
}

TEST(DelayEmbed, Errors) {
  const std::vector<double> s{1, 2, 3};
  auto kind = [&](std::size_t w, std::size_t stride) {
    try {
      delay_embed(s, w, stride);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind(4, 1), ErrorKind::InsufficientData);
  EXPECT_EQ(kind(0, 1), ErrorKind::Parameter);
  EXPECT_EQ(kind(2, 0), ErrorKind::Parameter);
}

TEST(DistanceMatrix, Examples) {
  auto dm = distance_matrix(PointCloud::from_points({{0, 0}, {3, 4}}));
  EXPECT_EQ(dm(0, 1), 5.0);
  EXPECT_EQ(dm(1, 0), 5.0);

  dm = distance_matrix(PointCloud::from_points({{7, 7, 7}}));
  EXPECT_EQ(dm.size(), 1u);
  EXPECT_EQ(dm(0, 0), 0.0);

  dm = distance_matrix(PointCloud::from_points({{0}, {1}, {2}}));
  EXPECT_EQ(dm(0, 2), dm(0, 1) + dm(1, 2));
  EXPECT_EQ(dm(0, 2), 2.0);
}

TEST(DistanceMatrix, EmptyCloudRejected) {
  EXPECT_THROW(distance_matrix(PointCloud{}), Error);
}

TEST(DistanceMatrix, ValidatingConstructor) {
  EXPECT_NO_THROW(DistanceMatrix(2, {0, 1, 1, 0}));
  EXPECT_THROW(DistanceMatrix(2, {0, 1, 2, 0}), Error);
  EXPECT_THROW(DistanceMatrix(2, {0, -1, -1, 0}), Error);
  EXPECT_THROW(DistanceMatrix(2, {1, 1, 1, 0}), Error);
  EXPECT_THROW(DistanceMatrix(2, {0, INFINITY, INFINITY, 0}), Error);
  EXPECT_THROW(DistanceMatrix(2, {0, 1, 1}), Error);
}

TEST(DistanceMatrix, EnclosingRadiusAndMax) {
  const DistanceMatrix dm(3, {0, 1, 4, 1, 0, 2, 4, 2, 0});
  EXPECT_EQ(dm.max_entry(), 4.0);
  EXPECT_EQ(dm.enclosing_radius(), 2.0);
  EXPECT_EQ(dm.scaled(0.5)(0, 2), 2.0);
}

TEST(PointCloud, RejectsNonFinite) {
  EXPECT_THROW(PointCloud(2, {0, NAN}), Error);
  EXPECT_THROW(PointCloud(2, {0, 1, 2}), Error);
  EXPECT_THROW(PointCloud::from_points({{0, 1}, {2}}), Error);
}
