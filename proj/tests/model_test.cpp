#include "sockp/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace sockp {
namespace {

// Reference quantiles from a 30-digit evaluation of sqrt(2) * erfinv(2p - 1).
TEST(InverseNormalCdf, MatchesHighPrecisionReference) {
  const std::pair<double, double> cases[] = {
      {0.5, 0.0},
      {0.6, 0.253347103135799798798},
      {0.9, 1.28155156554460046697},
      {0.95, 1.64485362695147271486},
      {0.975, 1.95996398454005423552},
      {0.99, 2.32634787404084110089},
      {0.995, 2.57582930354890076098},
      {0.999999, 4.75342430882289894819},
      {0.000001, -4.75342430882289894819},
      {0.01, -2.32634787404084110089},
      {0.3, -0.524400512708040784038},
  };
  for (auto [p, z] : cases) EXPECT_NEAR(inverse_normal_cdf(p), z, 1e-9) << p;
  EXPECT_THROW(inverse_normal_cdf(0.0), std::domain_error);
  EXPECT_THROW(inverse_normal_cdf(1.0), std::domain_error);
}

TEST(ResolveOmega, NormalQuantiles) {
  EXPECT_EQ(resolve_omega(OmegaSpec::normal(0.95)).omega.to_string(), "1.644853");
  EXPECT_EQ(resolve_omega(OmegaSpec::normal(0.99)).omega.to_string(), "2.326347");
  EXPECT_NEAR(resolve_omega(OmegaSpec::normal(0.975)).raw, 1.96, 5e-5);
  EXPECT_NEAR(resolve_omega(OmegaSpec::normal(0.995)).raw, 2.58, 5e-3);
}

TEST(ResolveOmega, ChebyshevFactors) {
  EXPECT_NEAR(resolve_omega(OmegaSpec::chebyshev(0.95)).raw, 4.36, 5e-3);
  EXPECT_NEAR(resolve_omega(OmegaSpec::chebyshev(0.99)).raw, 9.95, 5e-3);
  EXPECT_EQ(resolve_omega(OmegaSpec::chebyshev(0.95)).omega.to_string(), "4.358898");
}

TEST(ResolveOmega, DelageYeBranches) {
  EXPECT_NEAR(resolve_omega(OmegaSpec::delage_ye(0.95, 0.05, 2.0)).raw, 6.31047791516325963668, 1e-12);
  EXPECT_NEAR(resolve_omega(OmegaSpec::delage_ye(0.95, 0.2, 2.0)).raw, std::sqrt(40.0), 1e-12);
  for (double rho : {0.6, 0.9, 0.95}) {
    EXPECT_DOUBLE_EQ(resolve_omega(OmegaSpec::delage_ye(rho, 0.0, 1.0)).raw,
                     resolve_omega(OmegaSpec::chebyshev(rho)).raw);
  }
  EXPECT_THROW(resolve_omega(OmegaSpec::delage_ye(0.95, -0.1, 2.0)), std::invalid_argument);
  EXPECT_THROW(resolve_omega(OmegaSpec::delage_ye(0.95, 0.0, 0.5)), std::invalid_argument);
}

TEST(ResolveOmega, SupportIntervalForms) {
  const std::vector<Decimal> lo{Decimal::parse("1"), Decimal::parse("-3")};
  const std::vector<Decimal> hi{Decimal::parse("2.5"), Decimal::parse("1")};
  const auto printed = resolve_omega(OmegaSpec::support(0.95, lo, hi));
  EXPECT_NEAR(printed.raw, std::sqrt(-0.5 * std::log(0.05)), 1e-15);
  ASSERT_TRUE(printed.sigmas.has_value());
  EXPECT_EQ((*printed.sigmas)[0].to_string(), "5.25");
  EXPECT_EQ((*printed.sigmas)[1].to_string(), "8");
  const auto hoeffding = resolve_omega(OmegaSpec::support(0.95, lo, hi, SupportForm::kHoeffding));
  EXPECT_EQ((*hoeffding.sigmas)[0].to_string(), "1.5");
  EXPECT_EQ((*hoeffding.sigmas)[1].to_string(), "4");
  EXPECT_THROW(resolve_omega(OmegaSpec::support(0.95, hi, lo)), std::invalid_argument);
}

TEST(ResolveOmega, RejectsInvalidConfidence) {
  for (double rho : {0.49, 1.0, -0.2, 1.5}) {
    EXPECT_THROW(resolve_omega(OmegaSpec::normal(rho)), std::invalid_argument);
    EXPECT_THROW(resolve_omega(OmegaSpec::chebyshev(rho)), std::invalid_argument);
  }
  EXPECT_THROW(resolve_omega(OmegaSpec::normal(0.5)), std::invalid_argument);  // omega = 0
  EXPECT_THROW(resolve_omega(OmegaSpec::fixed(Decimal{})), std::invalid_argument);
  EXPECT_EQ(resolve_omega(OmegaSpec::fixed(Decimal::parse("1.96"))).omega.to_string(), "1.96");
}

TEST(ResolveOmega, MonotoneAndOrderedOnGrid) {
  double prev_normal = 0.0;
  double prev_cheb = 0.0;
  for (int i = 1; i < 500; ++i) {
    const double rho = 0.5 + 0.5 * i / 500.0;
    const double normal = resolve_omega(OmegaSpec::normal(rho)).raw;
    const double cheb = resolve_omega(OmegaSpec::chebyshev(rho)).raw;
    EXPECT_GT(normal, prev_normal);
    EXPECT_GT(cheb, prev_cheb);
    EXPECT_GT(cheb, normal);
    prev_normal = normal;
    prev_cheb = cheb;
  }
}

SockpInstance single(const char* mean, const char* sigma, const char* cap) {
  return {{1}, {Decimal::parse(mean)}, {Decimal::parse(sigma)}, Decimal::parse(cap), std::nullopt};
}

TEST(SocConstraint, Examples) {
  const auto inst = single("5", "1", "7");
  const Decimal two = Decimal::from_integer(2);
  EXPECT_DOUBLE_EQ(soc_lhs({false}, inst, two), 0.0);
  EXPECT_DOUBLE_EQ(soc_lhs({true}, inst, two), 7.0);
  EXPECT_TRUE(is_soc_feasible({false}, inst, two));
  EXPECT_TRUE(is_soc_feasible({true}, inst, two));
  EXPECT_FALSE(is_soc_feasible({true}, single("5", "1", "6.999999"), two));
  EXPECT_THROW(is_soc_feasible({true, false}, inst, two), std::invalid_argument);
}

TEST(SocConstraint, ZeroSigmasGiveDeterministicKnapsack) {
  SockpInstance inst{{1, 1}, {Decimal::parse("2.5"), Decimal::parse("4")}, {Decimal{}, Decimal{}},
                     Decimal::parse("6.5"), std::nullopt};
  const Decimal omega = Decimal::parse("3.1");
  EXPECT_DOUBLE_EQ(soc_lhs({true, true}, inst, omega), 6.5);
  EXPECT_TRUE(is_soc_feasible({true, true}, inst, omega));
}

TEST(SocConstraint, ExactCheckAgreesWithOracleAndFloatingLhs) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto inst = oracle::random_instance(rng, 8);
    const Decimal omega = t % 2 ? Decimal::parse("1.96") : Decimal::parse("4.358898");
    const oracle::SocOracle ref(inst, omega);
    const SocConstraint soc(inst, omega);
    const double b = inst.capacity.to_double();
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
      const auto x = oracle::bits(mask, 8);
      const bool exact = soc.feasible(x);
      ASSERT_EQ(exact, ref.feasible(mask));
      const double lhs = soc.lhs(x);
      if (std::abs(lhs - b) > 1e-6 * b) EXPECT_EQ(exact, lhs <= b);
    }
  }
}

TEST(SocConstraint, LargeCoefficientsFallBackToBigIntegers) {
  SockpInstance inst{{1, 1},
                     {Decimal::parse("12345678901.123456"), Decimal::parse("1")},
                     {Decimal::parse("98765432109.765432"), Decimal::parse("0.000001")},
                     Decimal::parse("99999999999.5"),
                     std::nullopt};
  const Decimal omega = Decimal::parse("1000.123456");
  const oracle::SocOracle ref(inst, omega);
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    EXPECT_EQ(is_soc_feasible(oracle::bits(mask, 2), inst, omega), ref.feasible(mask));
  }
}

TEST(SockpInstance, ValidateRejectsBadData) {
  auto inst = single("5", "1", "7");
  inst.profits.push_back(3);
  EXPECT_THROW(inst.validate(), std::invalid_argument);
  auto neg = single("5", "-1", "7");
  EXPECT_THROW(neg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace sockp
