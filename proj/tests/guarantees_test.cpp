#include "sockp/guarantees.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace sockp {
namespace {

// References from a 30-digit evaluation of the closed form.
TEST(GuaranteeGapNormal, MatchesHighPrecisionReference) {
  EXPECT_NEAR(guarantee_gap_normal(100, 10, 0.95), 0.0318737973537588233668, 1e-14);
  EXPECT_NEAR(guarantee_gap_normal(100, 18, 0.95), 0.00741077911890024818471, 1e-14);
  EXPECT_NEAR(guarantee_gap_normal(400, 35, 0.99), 0.00322345096392911628372, 1e-14);
  EXPECT_NEAR(guarantee_gap_normal(100, 5, 0.95), 0.656201656862587970512, 1e-13);
}

TEST(GuaranteeGapNormal, BelowOnePercentFromSqrtThreeN) {
  for (std::int64_t n : {10, 50, 100, 400, 1000, 5000}) {
    const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(3.0 * static_cast<double>(n))));
    EXPECT_LT(guarantee_gap_normal(n, m, 0.95), 0.01) << n;
  }
}

TEST(GuaranteeGapNormal, DomainAndLimit) {
  EXPECT_THROW(guarantee_gap_normal(100, 4, 0.95), std::domain_error);
  EXPECT_THROW(guarantee_gap_normal(100, 10, 1.0), std::invalid_argument);
  EXPECT_LT(guarantee_gap_normal(100, 10'000'000, 0.95), 1e-9);
  EXPECT_EQ(guarantee_gap_normal(100, 10, 0.5), 0.0);
}

TEST(GuaranteeGapDro, Formula) {
  EXPECT_NEAR(guarantee_gap_dro(100, 20, 0.95), 0.0475 / 15.05, 1e-15);
  EXPECT_NEAR(guarantee_gap_dro(100, 12, 0.95), 0.0475 / 4.81, 1e-15);
  EXPECT_LE(guarantee_gap_dro(100, 12, 0.95), 0.01);
  EXPECT_GT(guarantee_gap_dro(100, 11, 0.95), 0.01);
  EXPECT_LT(guarantee_gap_dro(100, 1'000'000, 0.95), 1e-9);
  EXPECT_THROW(guarantee_gap_dro(100, 4, 0.99), std::domain_error);
}

TEST(GuaranteeGaps, NonIncreasingInM) {
  for (double rho : {0.5, 0.8, 0.95, 0.99}) {
    double prev_n = 1.0;
    double prev_d = 1e9;
    for (std::int64_t m = 5; m <= 400; ++m) {
      const double gn = guarantee_gap_normal(100, m, rho);
      const double gd = guarantee_gap_dro(100, m, rho);
      EXPECT_LE(gn, prev_n + 1e-15);
      EXPECT_LE(gd, prev_d);
      prev_n = gn;
      prev_d = gd;
    }
  }
}

TEST(MinSegmentsDro, HundredItemsNeedTwelveSegments) {
  EXPECT_EQ(min_segments_dro(100, 0.95, 0.01), 12);
  for (std::int64_t n : {5, 10, 100, 1000}) {
    for (double delta : {0.5, 0.05, 0.01, 0.001}) {
      const auto m = min_segments_dro(n, 0.95, delta);
      EXPECT_LE(guarantee_gap_dro(n, m, 0.95), delta);
    }
  }
  // Continuous inversion: the gap at the real-valued root equals delta.
  const double rho = 0.9;
  const double delta = 0.02;
  const double n = 250;
  const double m = std::sqrt((rho * (1 - rho) / (4 * delta) + rho / 4) * n);
  EXPECT_NEAR(rho * (1 - rho) / (4 * m * m / n - rho), delta, 1e-15);
  EXPECT_LE(min_segments_dro(100, 0.95, 100.0), static_cast<std::int64_t>(std::ceil(std::sqrt(0.95 * 100) / 2)) + 1);
}

TEST(MinSegmentsNormal, SmallestValidM) {
  for (std::int64_t n : {10, 100, 400}) {
    for (double delta : {0.05, 0.01, 0.001}) {
      const auto m = min_segments_normal_order(n, 0.95, delta);
      EXPECT_LE(guarantee_gap_normal(n, m, 0.95), delta);
      if (4 * (m - 1) * (m - 1) >= n) EXPECT_GT(guarantee_gap_normal(n, m - 1, 0.95), delta);
    }
    EXPECT_LE(min_segments_normal_order(n, 0.95, 0.01), static_cast<std::int64_t>(std::ceil(std::sqrt(3.0 * n))));
    EXPECT_LE(min_segments_normal_order(n, 0.95, 0.01), min_segments_normal_order(n, 0.95, 0.001));
  }
}

SockpInstance single(const char* mean, const char* sigma, const char* cap) {
  return {{1}, {Decimal::parse(mean)}, {Decimal::parse(sigma)}, Decimal::parse(cap), std::nullopt};
}

TEST(MonteCarlo, Examples) {
  EXPECT_EQ(monte_carlo_feasibility({false}, single("5", "1", "1"), 1000, 1), 1.0);
  EXPECT_EQ(monte_carlo_feasibility({true}, single("5", "0", "5"), 1000, 1), 1.0);
  const std::int64_t samples = 100'000;
  const double rate = monte_carlo_feasibility({true}, single("0", "1", "0"), samples, 7);
  EXPECT_NEAR(rate, 0.5, 3.0 / std::sqrt(static_cast<double>(samples)));
  EXPECT_EQ(rate, monte_carlo_feasibility({true}, single("0", "1", "0"), samples, 7));
  EXPECT_THROW(monte_carlo_feasibility({true}, single("0", "1", "0"), 0, 7), std::invalid_argument);
}

TEST(MonteCarlo, QuantileIsReproduced) {
  // P(N(0, 1) <= 1.644853) = 0.95
  const double rate = monte_carlo_feasibility({true}, single("0", "1", "1.644853"), 200'000, 11);
  EXPECT_NEAR(rate, 0.95, 3.0 * std::sqrt(0.95 * 0.05 / 200'000));
}

}  // namespace
}  // namespace sockp
