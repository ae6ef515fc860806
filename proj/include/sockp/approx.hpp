#ifndef SOCKP_APPROX_HPP
#define SOCKP_APPROX_HPP

// Piecewise-linear envelopes of xi^2 on [0, omega] and the segment table that
// turns the ellipsoidal term omega * ||Sigma^{1/2} x|| into a bounded
// continuous knapsack  beta(x, Delta) = max { sum d_l z_l : sum f_l z_l <= Delta }.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sockp/model.hpp"

namespace sockp {

inline void check_envelope_args(double xi, int m, double omega) {
  if (m < 1) throw std::invalid_argument("envelope: m must be >= 1");
  if (!(omega > 0.0)) throw std::invalid_argument("envelope: omega must be > 0");
  if (!(xi >= 0.0 && xi <= omega)) throw std::domain_error("envelope: xi outside [0, omega]");
}

/// Chord of xi^2 over the subinterval [(k-1) omega/m, k omega/m] containing xi.
inline double eval_upper_envelope(double xi, int m, double omega) {
  check_envelope_args(xi, m, omega);
  const long double mm = m;
  const long double w = omega;
  const long double k = std::min<long double>(mm, std::floor(xi * mm / w) + 1);
  return static_cast<double>((2 * k - 1) / mm * w * xi - (k - 1) * k / (mm * mm) * w * w);
}

inline double eval_lower_envelope(double xi, int m, double omega) {
  const double mm = m;
  return eval_upper_envelope(xi, m, omega) - omega * omega / (4.0 * mm * mm);
}

struct ContainmentRadii {
  std::optional<double> inner;  // empty when 4 m^2 < n
  double outer = 0.0;
};

inline ContainmentRadii containment_radii(std::int64_t n, std::int64_t m, double omega) {
  if (n < 0 || m < 1) throw std::invalid_argument("containment_radii: need n >= 0, m >= 1");
  const double ratio = static_cast<double>(n) / (4.0 * static_cast<double>(m) * static_cast<double>(m));
  ContainmentRadii r;
  r.outer = omega * std::sqrt(1.0 + ratio);
  if (4 * m * m >= n) r.inner = omega * std::sqrt(std::max(0.0, 1.0 - ratio));
  return r;
}

// ---------------------------------------------------------------------------

enum class Scheme {
  kHorizontal,  // equal subintervals of [0, omega]
  kVertical,    // equal subintervals of [0, omega^2] (baseline)
};

/// Budget of the continuous knapsack, stored as an exact count of quarters.
struct Budget {
  std::int64_t quarters = 0;

  static Budget inner(std::int64_t m) { return {4 * m * m}; }
  static Budget outer(std::int64_t n, std::int64_t m) { return {4 * m * m + n}; }
  static Budget vertical(std::int64_t m) { return {4 * m}; }

  long double value() const { return static_cast<long double>(quarters) / 4; }
  friend bool operator==(const Budget&, const Budget&) = default;
};

struct Segment {
  std::size_t item = 0;
  std::int64_t k = 0;  // 1-based segment index within its item
  std::int64_t f = 0;
  // Horizontal: d = omega * g / (10^(ss+so) * m) with g = S_j; exact.
  std::int64_t g = 0;
  long double d = 0;
};

class SegmentTable {
 public:
  SegmentTable(const SockpInstance& inst, const Decimal& omega, std::int64_t m,
               Scheme scheme = Scheme::kHorizontal)
      : view_(inst, omega), m_(m), scheme_(scheme), n_(inst.size()) {
    if (m < 1) throw std::invalid_argument("build_segments: m must be >= 1");
    const long double w = omega.to_long_double();
    entries_.reserve(n_ * static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < n_; ++j) {
      const long double s = inst.sigmas[j].to_long_double();
      for (std::int64_t k = 1; k <= m; ++k) {
        Segment seg{j, k, 0, view_.sigmas[j], 0};
        if (scheme == Scheme::kHorizontal) {
          seg.f = 2 * k - 1;
          seg.d = w * s / static_cast<long double>(m);
        } else {
          seg.f = 1;
          seg.d = w * s *
                  (std::sqrt(static_cast<long double>(k) / m) -
                   std::sqrt(static_cast<long double>(k - 1) / m));
        }
        entries_.push_back(seg);
      }
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [this](const Segment& a, const Segment& b) { return compare(a, b) > 0; });
    prefix_f_.resize(entries_.size() + 1, 0);
    for (std::size_t i = 0; i < entries_.size(); ++i) prefix_f_[i + 1] = prefix_f_[i] + entries_[i].f;
  }

  std::int64_t m() const { return m_; }
  Scheme scheme() const { return scheme_; }
  std::size_t items() const { return n_; }
  const IntegerView& view() const { return view_; }
  const std::vector<Segment>& entries() const { return entries_; }
  // prefix_f()[l] = sum of f over the first l sorted entries.
  const std::vector<std::int64_t>& prefix_f() const { return prefix_f_; }

  /// Sign of ratio(a) - ratio(b) where ratio = d / f; exact for Horizontal.
  int compare(const Segment& a, const Segment& b) const {
    if (scheme_ == Scheme::kHorizontal) {
      const i128 lhs = static_cast<i128>(a.g) * b.f;
      const i128 rhs = static_cast<i128>(b.g) * a.f;
      return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    }
    const long double lhs = a.d * b.f;
    const long double rhs = b.d * a.f;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }

  /// Smallest 1-based rank l with prefix_f[l] >= Delta, or nullopt when the
  /// whole table is cheaper than the budget.
  std::optional<std::size_t> pivot_start(Budget delta) const {
    auto it = std::find_if(prefix_f_.begin() + 1, prefix_f_.end(),
                           [&](std::int64_t pf) { return 4 * static_cast<i128>(pf) >= delta.quarters; });
    if (it == prefix_f_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - prefix_f_.begin());
  }

 private:
  IntegerView view_;
  std::int64_t m_;
  Scheme scheme_;
  std::size_t n_;
  std::vector<Segment> entries_;
  std::vector<std::int64_t> prefix_f_;
};

inline SegmentTable build_segments(const SockpInstance& inst, const Decimal& omega, std::int64_t m,
                                   Scheme scheme = Scheme::kHorizontal) {
  return SegmentTable(inst, omega, m, scheme);
}

/// Greedy optimum of the bounded continuous knapsack restricted to items in x.
inline long double beta(const Selection& x, const SegmentTable& table, Budget delta) {
  if (x.size() != table.items()) throw std::invalid_argument("beta: selection length differs from n");
  long double remaining = delta.value();
  long double value = 0;
  for (const Segment& seg : table.entries()) {
    if (!x[seg.item]) continue;
    if (remaining <= 0) break;
    const long double f = static_cast<long double>(seg.f);
    if (f <= remaining) {
      value += seg.d;
      remaining -= f;
    } else {
      value += seg.d * remaining / f;
      remaining = 0;
    }
  }
  return value;
}

/// beta as an exact fraction num / den (Horizontal scheme only).
struct ExactBeta {
  BigInt num;
  BigInt den;
};

inline ExactBeta beta_exact(const Selection& x, const SegmentTable& table, Budget delta) {
  if (table.scheme() != Scheme::kHorizontal) {
    throw std::invalid_argument("beta_exact: only defined for the horizontal scheme");
  }
  if (x.size() != table.items()) throw std::invalid_argument("beta_exact: selection length differs from n");
  // Work in units of f/4 and g; beta = W * G4 / (4 * 10^(ss+so) * m) with
  // G4 = 4 * sum_full g + g_last * (Delta4 - 4 * used) / f_last.
  std::int64_t remaining4 = delta.quarters;
  BigInt full = 0;
  std::int64_t g_last = 0;
  std::int64_t f_last = 1;
  std::int64_t rem_last = 0;
  for (const Segment& seg : table.entries()) {
    if (!x[seg.item]) continue;
    if (remaining4 <= 0) break;
    if (4 * seg.f <= remaining4) {
      full += seg.g;
      remaining4 -= 4 * seg.f;
    } else {
      g_last = seg.g;
      f_last = seg.f;
      rem_last = remaining4;
      remaining4 = 0;
    }
  }
  const IntegerView& v = table.view();
  BigInt scale = 1;
  for (int i = 0; i < v.ss + v.so; ++i) scale *= 10;
  ExactBeta out;
  out.num = BigInt(v.omega) * (4 * full * f_last + BigInt(g_last) * rem_last);
  out.den = 4 * scale * table.m() * f_last;
  return out;
}

}  // namespace sockp

#endif  // SOCKP_APPROX_HPP
