#ifndef SOCKP_MODEL_HPP
#define SOCKP_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sockp/decimal.hpp"
#include "sockp/detail/int128.hpp"

namespace sockp {

using Selection = std::vector<bool>;
using BigInt = boost::multiprecision::cpp_int;

/// Raised when a solver post-condition fails (the CLI maps it to exit code 3).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SockpInstance {
  std::vector<std::int64_t> profits;
  std::vector<Decimal> means;
  std::vector<Decimal> sigmas;
  Decimal capacity;
  std::optional<Decimal> omega;

  std::size_t size() const { return profits.size(); }

  void validate() const {
    const std::size_t n = profits.size();
    if (means.size() != n || sigmas.size() != n) {
      throw std::invalid_argument("instance: profits, means and sigmas must have equal length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (profits[j] < 0) throw std::invalid_argument("instance: negative profit");
      if (means[j].is_negative()) throw std::invalid_argument("instance: negative mean");
      if (sigmas[j].is_negative()) throw std::invalid_argument("instance: negative sigma");
    }
    if (capacity.is_negative()) throw std::invalid_argument("instance: negative capacity");
    if (omega && !(*omega > Decimal{})) throw std::invalid_argument("instance: omega must be > 0");
  }

  friend bool operator==(const SockpInstance&, const SockpInstance&) = default;
};

inline std::int64_t profit_of(const Selection& x, const std::vector<std::int64_t>& profits) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j]) total += profits[j];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Safety factor providers

/// Inverse of the standard normal CDF: Acklam's rational approximation
/// followed by one Halley step against erfc (|error| well below 1e-12).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

enum class Ambiguity { kNormal, kMomentChebyshev, kDelageYe, kSupportInterval, kExplicit };

// kPrinted uses |upper^2 - lower^2| as the dispersion coefficient;
// kHoeffding uses (upper - lower).
enum class SupportForm { kPrinted, kHoeffding };

struct OmegaSpec {
  Ambiguity kind = Ambiguity::kExplicit;
  double rho = 0.95;
  double gamma1 = 0.0;
  double gamma2 = 1.0;
  std::vector<Decimal> lower;
  std::vector<Decimal> upper;
  SupportForm support_form = SupportForm::kPrinted;
  Decimal explicit_omega;
  // Resolved factors are truncated to this many fractional digits.
  int digits = 6;

  static OmegaSpec normal(double rho) { return {.kind = Ambiguity::kNormal, .rho = rho}; }
  static OmegaSpec chebyshev(double rho) {
    return {.kind = Ambiguity::kMomentChebyshev, .rho = rho};
  }
  static OmegaSpec delage_ye(double rho, double gamma1, double gamma2) {
    return {.kind = Ambiguity::kDelageYe, .rho = rho, .gamma1 = gamma1, .gamma2 = gamma2};
  }
  static OmegaSpec support(double rho, std::vector<Decimal> lower, std::vector<Decimal> upper,
                           SupportForm form = SupportForm::kPrinted) {
    return {.kind = Ambiguity::kSupportInterval,
            .rho = rho,
            .lower = std::move(lower),
            .upper = std::move(upper),
            .support_form = form};
  }
  static OmegaSpec fixed(Decimal omega) {
    return {.kind = Ambiguity::kExplicit, .explicit_omega = omega};
  }
};

struct ResolvedOmega {
  Decimal omega;
  double raw = 0.0;  // value before truncation
  std::optional<std::vector<Decimal>> sigmas;
};

inline ResolvedOmega resolve_omega(const OmegaSpec& spec) {
  auto check_rho = [&] {
    if (!(spec.rho >= 0.5 && spec.rho < 1.0)) {
      throw std::invalid_argument("resolve_omega: rho must lie in [0.5, 1)");
    }
  };
  ResolvedOmega out;
  switch (spec.kind) {
    case Ambiguity::kNormal:
      check_rho();
      out.raw = spec.rho == 0.5 ? 0.0 : inverse_normal_cdf(spec.rho);
      break;
    case Ambiguity::kMomentChebyshev:
      check_rho();
      out.raw = std::sqrt(spec.rho / (1.0 - spec.rho));
      break;
    case Ambiguity::kDelageYe:
      check_rho();
      if (spec.gamma1 < 0.0 || spec.gamma2 < 1.0) {
        throw std::invalid_argument("resolve_omega: Delage-Ye needs gamma1 >= 0 and gamma2 >= 1");
      }
      if (spec.gamma1 / spec.gamma2 <= 1.0 - spec.rho) {
        if (spec.gamma2 < spec.gamma1) {
          throw std::invalid_argument("resolve_omega: Delage-Ye needs gamma2 >= gamma1");
        }
        out.raw = std::sqrt(spec.gamma1) +
                  std::sqrt((spec.gamma2 - spec.gamma1) * spec.rho / (1.0 - spec.rho));
      } else {
        out.raw = std::sqrt(spec.gamma2 / (1.0 - spec.rho));
      }
      break;
    case Ambiguity::kSupportInterval: {
      check_rho();
      if (spec.lower.size() != spec.upper.size()) {
        throw std::invalid_argument("resolve_omega: support bounds differ in length");
      }
      out.raw = std::sqrt(-0.5 * std::log(1.0 - spec.rho));
      std::vector<Decimal> sigmas;
      sigmas.reserve(spec.lower.size());
      for (std::size_t j = 0; j < spec.lower.size(); ++j) {
        const Decimal& lo = spec.lower[j];
        const Decimal& hi = spec.upper[j];
        if (hi < lo) throw std::invalid_argument("resolve_omega: lower bound above upper bound");
        Decimal s = spec.support_form == SupportForm::kPrinted ? hi * hi - lo * lo : hi - lo;
        if (s.is_negative()) s = Decimal{} - s;
        sigmas.push_back(s);
      }
      out.sigmas = std::move(sigmas);
      break;
    }
    case Ambiguity::kExplicit:
      if (!(spec.explicit_omega > Decimal{})) {
        throw std::invalid_argument("resolve_omega: omega must be > 0");
      }
      out.omega = spec.explicit_omega;
      out.raw = spec.explicit_omega.to_double();
      return out;
  }
  out.omega = Decimal::truncate(out.raw, spec.digits);
  if (!(out.omega > Decimal{})) {
    throw std::invalid_argument("resolve_omega: resolved omega must be > 0");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer view of the constraint  a'x + omega * sqrt(sum sigma_j^2 x_j) <= b

/// All coefficients rescaled to integers:
///   means  A_j = a_j * 10^sa, capacity B = b * 10^sa,
///   sigmas S_j = sigma_j * 10^ss, omega W = omega * 10^so.
struct IntegerView {
  int sa = 0;
  int ss = 0;
  int so = 0;
  std::vector<std::int64_t> means;
  std::int64_t capacity = 0;
  std::vector<std::int64_t> sigmas;
  std::int64_t omega = 0;

  IntegerView() = default;

  IntegerView(const SockpInstance& inst, const Decimal& omega_value) {
    sa = inst.capacity.scale();
    for (const auto& a : inst.means) sa = std::max(sa, a.scale());
    for (const auto& s : inst.sigmas) ss = std::max(ss, s.scale());
    so = omega_value.scale();
    for (const auto& a : inst.means) means.push_back(detail::narrow_i64(a.scaled_to(sa)));
    capacity = detail::narrow_i64(inst.capacity.scaled_to(sa));
    for (const auto& s : inst.sigmas) sigmas.push_back(detail::narrow_i64(s.scaled_to(ss)));
    omega = detail::narrow_i64(omega_value.scaled_to(so));
  }
};

namespace detail {

template <class Int>
bool soc_feasible_with(const IntegerView& v, const Selection& x) {
  Int load = 0;
  Int spread = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j]) continue;
    load += Int(v.means[j]);
    spread += Int(v.sigmas[j]) * Int(v.sigmas[j]);
  }
  const Int slack = Int(v.capacity) - load;
  if (slack < 0) return false;
  Int lhs = slack * slack;
  for (int i = 0; i < v.ss + v.so; ++i) lhs *= 100;
  Int rhs = Int(v.omega) * Int(v.omega) * spread;
  for (int i = 0; i < v.sa; ++i) rhs *= 100;
  return lhs >= rhs;
}

// Overflow-checked 128-bit version; returns nullopt on overflow.
inline std::optional<bool> soc_feasible_i128(const IntegerView& v, const Selection& x) {
  i128 load = 0;
  i128 spread = 0;
  try {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!x[j]) continue;
      load = checked_add(load, v.means[j]);
      spread = checked_add(spread, checked_mul(v.sigmas[j], v.sigmas[j]));
    }
    const i128 slack = static_cast<i128>(v.capacity) - load;
    if (slack < 0) return false;
    const i128 lhs = checked_mul(checked_mul(slack, slack), pow10(2 * (v.ss + v.so)));
    const i128 rhs = checked_mul(checked_mul(checked_mul(v.omega, v.omega), spread),
                                 pow10(2 * v.sa));
    return lhs >= rhs;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

class SocConstraint {
 public:
  SocConstraint(const SockpInstance& inst, const Decimal& omega)
      : inst_(&inst), omega_(omega), view_(inst, omega) {}

  const IntegerView& view() const { return view_; }
  const Decimal& omega() const { return omega_; }

  double lhs(const Selection& x) const {
    check(x);
    long double load = 0;
    long double spread = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!x[j]) continue;
      load += inst_->means[j].to_long_double();
      const long double s = inst_->sigmas[j].to_long_double();
      spread += s * s;
    }
    return static_cast<double>(load + omega_.to_long_double() * std::sqrt(spread));
  }

  bool feasible(const Selection& x) const {
    check(x);
    if (auto fast = detail::soc_feasible_i128(view_, x)) return *fast;
    return detail::soc_feasible_with<BigInt>(view_, x);
  }

 private:
  void check(const Selection& x) const {
    if (x.size() != inst_->size()) throw std::invalid_argument("selection length differs from n");
  }

  const SockpInstance* inst_;
  Decimal omega_;
  IntegerView view_;
};

inline double soc_lhs(const Selection& x, const SockpInstance& inst, const Decimal& omega) {
  return SocConstraint(inst, omega).lhs(x);
}

inline bool is_soc_feasible(const Selection& x, const SockpInstance& inst, const Decimal& omega) {
  return SocConstraint(inst, omega).feasible(x);
}

/// Instance with the dispersion coefficients replaced (support-interval case).
inline SockpInstance with_sigmas(SockpInstance inst, const std::vector<Decimal>& sigmas) {
  if (sigmas.size() != inst.size()) throw std::invalid_argument("with_sigmas: length mismatch");
  inst.sigmas = sigmas;
  return inst;
}

}  // namespace sockp

#endif  // SOCKP_MODEL_HPP
