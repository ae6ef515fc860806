#ifndef SOCKP_TOOLKIT_GENERATE_HPP
#define SOCKP_TOOLKIT_GENERATE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sockp/detail/rng.hpp"
#include "sockp/model.hpp"

namespace sockp::toolkit {

enum class Family { kSC, kIC, kSS, kSCR, kICR };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::kSC: return "SC";
    case Family::kIC: return "IC";
    case Family::kSS: return "SS";
    case Family::kSCR: return "SCR";
    case Family::kICR: return "ICR";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Family f : {Family::kSC, Family::kIC, Family::kSS, Family::kSCR, Family::kICR}) {
    if (family_name(f) == up) return f;
  }
  throw std::invalid_argument("unknown instance family '" + std::string(name) + "'");
}

struct GeneratorSpec {
  Family family = Family::kSC;
  std::int64_t n = 100;
  std::uint64_t seed = 1;
  OmegaSpec omega = OmegaSpec::chebyshev(0.95);
};

struct GeneratedInstance {
  SockpInstance instance;
  // SCR/ICR only: the Unif[0.5, 0.8] multiplier drawn for each item.
  std::vector<double> multipliers;
};

namespace detail {

// One counter stream per (seed, field, item).
enum Field : std::uint64_t { kMean = 1, kProfit = 2, kSigma = 3, kMultiplier = 4 };

inline double draw_uniform(std::uint64_t seed, Field field, std::size_t item) {
  return sockp::detail::CounterStream(seed, field, item).uniform();
}

inline std::int64_t draw_int(std::uint64_t seed, Field field, std::size_t item, std::int64_t lo,
                             std::int64_t hi) {
  return sockp::detail::CounterStream(seed, field, item).uniform_int(lo, hi);
}

}  // namespace detail

inline GeneratedInstance generate_with_details(const GeneratorSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: n must be >= 1");
  const auto n = static_cast<std::size_t>(spec.n);
  const std::uint64_t seed = spec.seed;
  GeneratedInstance out;
  SockpInstance& inst = out.instance;
  std::int64_t total_mean = 0;
  const bool inverse = spec.family == Family::kIC || spec.family == Family::kICR;
  const bool reversed = spec.family == Family::kSCR || spec.family == Family::kICR;
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t a = 0;
    std::int64_t p = 0;
    if (inverse) {
      p = detail::draw_int(seed, detail::kProfit, j, 1, 100);
      a = std::min<std::int64_t>(100, p + 10);
    } else {
      a = detail::draw_int(seed, detail::kMean, j, 1, 100);
      p = spec.family == Family::kSS ? a : a + 10;
    }
    Decimal sigma;
    if (spec.family == Family::kSS) {
      sigma = Decimal(a, 1);
    } else {
      const double lo = 0.05 * static_cast<double>(a);
      sigma = Decimal::round_half_even(lo + lo * detail::draw_uniform(seed, detail::kSigma, j), 4);
    }
    if (reversed) {
      const double u = 0.5 + 0.3 * detail::draw_uniform(seed, detail::kMultiplier, j);
      out.multipliers.push_back(u);
      sigma = Decimal::round_half_even(10.0 - sigma.to_double() * u, 4);
      if (sigma.is_negative()) throw InvariantViolation("generate: negative reversed sigma");
    }
    inst.profits.push_back(p);
    inst.means.push_back(Decimal::from_integer(a));
    inst.sigmas.push_back(sigma);
    total_mean += a;
  }
  inst.capacity = Decimal::from_integer(total_mean / 2);
  const ResolvedOmega omega = resolve_omega(spec.omega);
  if (omega.sigmas && !omega.sigmas->empty()) inst = with_sigmas(std::move(inst), *omega.sigmas);
  inst.omega = omega.omega;
  return out;
}

inline SockpInstance generate(const GeneratorSpec& spec) { return generate_with_details(spec).instance; }

}  // namespace sockp::toolkit

#endif  // SOCKP_TOOLKIT_GENERATE_HPP
