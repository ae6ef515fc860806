#ifndef SOCKP_GUARANTEES_HPP
#define SOCKP_GUARANTEES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "sockp/detail/rng.hpp"
#include "sockp/model.hpp"

namespace sockp {

namespace detail {

inline void check_rho(double rho) {
  if (!(rho >= 0.5 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0.5, 1)");
}

}  // namespace detail

/// Worst-case loss of confidence for inner-approximation solutions under
/// independent normal weights. Requires 4 m^2 >= n.
inline double guarantee_gap_normal(std::int64_t n, std::int64_t m, double rho) {
  detail::check_rho(rho);
  if (n < 1 || m < 1) throw std::invalid_argument("guarantee_gap_normal: need n, m >= 1");
  if (4 * m * m < n) throw std::domain_error("guarantee_gap_normal: requires m >= sqrt(n) / 2");
  const double z = rho == 0.5 ? 0.0 : inverse_normal_cdf(rho);
  const double shrink = 1.0 - static_cast<double>(n) / (4.0 * static_cast<double>(m) * static_cast<double>(m));
  return z * (1.0 - std::sqrt(shrink)) * std::exp(-0.5 * z * z * shrink) /
         std::sqrt(2.0 * std::numbers::pi);
}

/// Same quantity for arbitrary independent weights (moment ambiguity).
/// Requires 4 m^2 / n > rho.
inline double guarantee_gap_dro(std::int64_t n, std::int64_t m, double rho) {
  detail::check_rho(rho);
  if (n < 1 || m < 1) throw std::invalid_argument("guarantee_gap_dro: need n, m >= 1");
  const double ratio = 4.0 * static_cast<double>(m) * static_cast<double>(m) / static_cast<double>(n);
  if (!(ratio > rho)) throw std::domain_error("guarantee_gap_dro: requires 4 m^2 / n > rho");
  return rho * (1.0 - rho) / (ratio - rho);
}

inline std::int64_t min_segments_dro(std::int64_t n, double rho, double delta) {
  detail::check_rho(rho);
  if (n < 1 || !(delta > 0.0)) throw std::invalid_argument("min_segments_dro: need n >= 1, delta > 0");
  const double v = (rho * (1.0 - rho) / (4.0 * delta) + rho / 4.0) * static_cast<double>(n);
  auto m = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(v))));
  auto valid = [&](std::int64_t k) {
    return 4.0 * static_cast<double>(k) * static_cast<double>(k) / static_cast<double>(n) > rho;
  };
  while (!valid(m) || guarantee_gap_dro(n, m, rho) > delta) ++m;
  return m;
}

/// Smallest m >= sqrt(n)/2 with guarantee_gap_normal(n, m, rho) <= delta.
inline std::int64_t min_segments_normal_order(std::int64_t n, double rho, double delta) {
  detail::check_rho(rho);
  if (n < 1 || !(delta > 0.0)) {
    throw std::invalid_argument("min_segments_normal_order: need n >= 1, delta > 0");
  }
  std::int64_t lo = 1;
  while (4 * lo * lo < n) ++lo;
  if (guarantee_gap_normal(n, lo, rho) <= delta) return lo;
  std::int64_t hi = lo;
  while (guarantee_gap_normal(n, hi, rho) > delta) {
    lo = hi;
    if (hi > (std::int64_t{1} << 40)) throw std::domain_error("min_segments_normal_order: delta too small");
    hi *= 2;
  }
  // gap(lo) > delta >= gap(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (guarantee_gap_normal(n, mid, rho) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// Fraction of sampled weight vectors a ~ N(a_hat, diag(sigma^2)) with a'x <= b.
/// Sample s draws from its own counter stream, so results depend only on (seed, samples).
inline double monte_carlo_feasibility(const Selection& x, const SockpInstance& inst,
                                      std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_feasibility: samples must be >= 1");
  if (x.size() != inst.size()) throw std::invalid_argument("selection length differs from n");
  std::vector<double> mean;
  std::vector<double> sd;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j]) continue;
    mean.push_back(inst.means[j].to_double());
    sd.push_back(inst.sigmas[j].to_double());
  }
  const double b = inst.capacity.to_double();
  std::int64_t ok = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    detail::CounterStream rng(seed, static_cast<std::uint64_t>(s));
    double load = 0.0;
    for (std::size_t i = 0; i < mean.size(); ++i) load += mean[i] + sd[i] * rng.normal();
    if (load <= b) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(samples);
}

}  // namespace sockp

#endif  // SOCKP_GUARANTEES_HPP
