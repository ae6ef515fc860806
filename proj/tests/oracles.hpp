#ifndef SOCKP_TESTS_ORACLES_HPP
#define SOCKP_TESTS_ORACLES_HPP

// Independent reference implementations used by the tests: exhaustive
// enumeration in exact rational arithmetic parsed straight from decimal text.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sockp/sockp.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rational parse_decimal(const std::string& text) {
  Int num = 0;
  Int den = 1;
  bool neg = false;
  bool frac = false;
  for (char c : text) {
    if (c == '-') {
      neg = true;
    } else if (c == '.') {
      frac = true;
    } else {
      num = num * 10 + (c - '0');
      if (frac) den *= 10;
    }
  }
  Rational r(num, den);
  return neg ? -r : r;
}

inline Rational rational(const sockp::Decimal& d) { return parse_decimal(d.to_string()); }

inline sockp::Selection bits(std::uint64_t mask, std::size_t n) {
  sockp::Selection x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1U;
  return x;
}

struct KnapsackOptimum {
  std::int64_t value = 0;
  std::uint64_t mask = 0;
};

inline KnapsackOptimum knapsack(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& w,
                                std::int64_t c) {
  KnapsackOptimum best;
  const std::size_t n = p.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t pw = 0;
    std::int64_t ww = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1U) {
        pw += p[j];
        ww += w[j];
      }
    }
    if (ww <= c && pw > best.value) best = {pw, mask};
  }
  return best;
}

/// a'x + omega * sqrt(sum sigma^2 x) <= b, decided without square roots.
class SocOracle {
 public:
  SocOracle(const sockp::SockpInstance& inst, const sockp::Decimal& omega)
      : b_(rational(inst.capacity)), omega2_(rational(omega) * rational(omega)) {
    for (const auto& a : inst.means) a_.push_back(rational(a));
    for (const auto& s : inst.sigmas) s2_.push_back(rational(s) * rational(s));
  }

  bool feasible(std::uint64_t mask) const {
    Rational load = 0;
    Rational spread = 0;
    for (std::size_t j = 0; j < a_.size(); ++j) {
      if ((mask >> j) & 1U) {
        load += a_[j];
        spread += s2_[j];
      }
    }
    if (load > b_) return false;
    return (b_ - load) * (b_ - load) >= omega2_ * spread;
  }

 private:
  std::vector<Rational> a_;
  std::vector<Rational> s2_;
  Rational b_;
  Rational omega2_;
};

inline std::int64_t sockp_optimum(const sockp::SockpInstance& inst, const sockp::Decimal& omega) {
  const SocOracle soc(inst, omega);
  std::int64_t best = 0;
  const std::size_t n = inst.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t p = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1U) p += inst.profits[j];
    }
    if (p > best && soc.feasible(mask)) best = p;
  }
  return best;
}

/// Segment coefficients (d, f) as rationals, built from the closed form
/// d = omega * sigma / m, f = 2k - 1.
struct RationalSegment {
  std::size_t item;
  Rational d;
  Rational f;
};

inline std::vector<RationalSegment> horizontal_segments(const sockp::SockpInstance& inst,
                                                        const sockp::Decimal& omega, std::int64_t m) {
  std::vector<RationalSegment> out;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    for (std::int64_t k = 1; k <= m; ++k) {
      out.push_back({j, rational(omega) * rational(inst.sigmas[j]) / m, Rational(2 * k - 1)});
    }
  }
  return out;
}

/// beta by LP duality: min over r in {0} U {d/f} of r*Delta + sum max(0, d - r f).
inline Rational beta_dual(const std::vector<RationalSegment>& segs, std::uint64_t mask, const Rational& delta) {
  std::vector<Rational> candidates{0};
  for (const auto& s : segs) {
    if ((mask >> s.item) & 1U) candidates.push_back(s.d / s.f);
  }
  Rational best = -1;
  for (const Rational& r : candidates) {
    Rational v = r * delta;
    for (const auto& s : segs) {
      if (((mask >> s.item) & 1U) && s.d > r * s.f) v += s.d - r * s.f;
    }
    if (best < 0 || v < best) best = v;
  }
  return best;
}

/// beta by enumerating every (T, t): z = 1 on T, fractional on t.
inline Rational beta_pairs(const std::vector<RationalSegment>& segs, std::uint64_t mask, const Rational& delta) {
  std::vector<RationalSegment> active;
  for (const auto& s : segs) {
    if ((mask >> s.item) & 1U) active.push_back(s);
  }
  const std::size_t L = active.size();
  Rational best = 0;
  for (std::uint64_t t_set = 0; t_set < (std::uint64_t{1} << L); ++t_set) {
    Rational used = 0;
    Rational value = 0;
    for (std::size_t i = 0; i < L; ++i) {
      if ((t_set >> i) & 1U) {
        used += active[i].f;
        value += active[i].d;
      }
    }
    if (used > delta) continue;
    if (value > best) best = value;
    for (std::size_t t = 0; t < L; ++t) {
      if ((t_set >> t) & 1U) continue;
      Rational frac = (delta - used) / active[t].f;
      if (frac > 1) frac = 1;
      const Rational v = value + active[t].d * frac;
      if (v > best) best = v;
    }
  }
  return best;
}

/// beta by the greedy fractional fill in decreasing d/f order.
class GreedyBeta {
 public:
  explicit GreedyBeta(std::vector<RationalSegment> segs) : segs_(std::move(segs)) {
    std::stable_sort(segs_.begin(), segs_.end(), [](const RationalSegment& a, const RationalSegment& b) {
      return a.d * b.f > b.d * a.f;
    });
  }

  Rational operator()(std::uint64_t mask, const Rational& delta) const {
    Rational left = delta;
    Rational value = 0;
    for (const auto& s : segs_) {
      if (left <= 0) break;
      if (!((mask >> s.item) & 1U)) continue;
      if (s.f <= left) {
        value += s.d;
        left -= s.f;
      } else {
        value += s.d * left / s.f;
        left = 0;
      }
    }
    return value;
  }

 private:
  std::vector<RationalSegment> segs_;
};

/// Random small instance with decimal means and sigmas.
inline sockp::SockpInstance random_instance(std::mt19937_64& rng, std::size_t n, int max_profit = 100) {
  std::uniform_int_distribution<std::int64_t> profit(0, max_profit);
  std::uniform_int_distribution<std::int64_t> mean(1, 1000);   // one decimal
  std::uniform_int_distribution<std::int64_t> sigma(0, 3000);  // three decimals
  sockp::SockpInstance inst;
  std::int64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    inst.profits.push_back(profit(rng));
    const std::int64_t a = mean(rng);
    total += a;
    inst.means.push_back(sockp::Decimal(a, 1));
    inst.sigmas.push_back(sockp::Decimal(sigma(rng), 3));
  }
  std::uniform_int_distribution<std::int64_t> frac(25, 75);
  inst.capacity = sockp::Decimal(total * frac(rng) / 100, 1);
  return inst;
}

}  // namespace oracle

#endif  // SOCKP_TESTS_ORACLES_HPP
