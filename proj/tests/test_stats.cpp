#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "activeperc/stats.hpp"

using namespace activeperc::stats;

TEST(Stats, MeanAndMedian) {
  const std::vector<double> xs{3.0, 1.0, 2.0, 10.0};
  EXPECT_DOUBLE_EQ(mean(xs), 4.0);
  EXPECT_DOUBLE_EQ(median(xs), 2.5);
  EXPECT_DOUBLE_EQ(median({5.0, 1.0, 3.0}), 3.0);
}

TEST(Stats, KsStatistic) {
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2}, {3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5);
  EXPECT_NEAR(ks_statistic_cdf({0.5}, [](double t) { return t; }), 0.5, 1e-15);
  EXPECT_NEAR(ks_statistic_cdf({0.1, 0.6}, [](double t) { return t; }), 0.4, 1e-15);
}

TEST(Stats, KsCritical) {
  // c(0.05) = 1.3581, c(0.01) = 1.6276.
  EXPECT_NEAR(ks_critical(0.05, 100), 0.13581, 1e-4);
  EXPECT_NEAR(ks_critical(0.01, 50, 50), 1.62762 * std::sqrt(2.0 / 50.0), 1e-4);
}

TEST(Stats, LinearFit) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LinearFit f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  const LinearFit g = linear_fit(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 0});
  EXPECT_NEAR(g.slope, 0.0, 1e-12);
  EXPECT_NEAR(g.r_squared, 0.0, 1e-12);
}
