#ifndef SOCKP_RKPM_HPP
#define SOCKP_RKPM_HPP

// (RKPm):  max p'x  s.t.  a'x + beta(x, Delta) <= b,  x binary.
//
// Dualizing the continuous knapsack in beta gives, for every pivot segment l
// with ratio r_l = d_l / f_l, an ordinary knapsack B_l with weights
//   w_j = a_j + sum_{l' in L_l, j(l') = j} (d_l' - r_l f_l')
// and capacity b - r_l Delta, where L_l holds the segments of strictly larger
// ratio. The robust feasible set is the union of the B_l over the pivot family
// plus the dummy pivot (r = 0), so (RKPm) is solved by solving each B_l.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sockp/approx.hpp"
#include "sockp/core_knapsack.hpp"
#include "sockp/model.hpp"

namespace sockp {

enum class BoundKind { kUpper, kLower, kExact };

enum class PivotFamily {
  kComplete,     // l_hat .. nm, plus the dummy
  kWithoutLast,  // l_hat .. nm-1, plus the dummy
};

enum class SubproblemScaling {
  kExactWhenPossible,  // common-denominator integers; falls back to kFactor on overflow
  kFactor,             // ceil(w * factor), floor(c * factor)
};

struct RkpmOptions {
  Scheme scheme = Scheme::kHorizontal;
  std::int64_t scale_factor = 1'000'000;
  SubproblemScaling scaling = SubproblemScaling::kExactWhenPossible;
  PivotFamily family = PivotFamily::kComplete;
  KnapsackOptions knapsack;
  bool prune = true;  // skip subproblems whose LP bound cannot beat the incumbent
  int threads = 1;
};

struct BoundResult {
  Selection solution;
  std::int64_t objective = 0;
  BoundKind kind = BoundKind::kUpper;
  std::int64_t m = 0;
  Budget delta;
  std::int64_t subproblems_solved = 0;
  std::int64_t subproblems_skipped = 0;  // negative capacity
  std::int64_t subproblems_pruned = 0;   // bound could not beat the incumbent
  std::size_t pivot = 0;                 // 1-based rank of the winning pivot; nm + 1 is the dummy
  std::chrono::nanoseconds wall_time{0};
};

/// Subproblem B_l as exact fractions: weights num_j / den, capacity cap / den.
struct ExactSubproblem {
  std::vector<i128> num;
  i128 den = 1;
  i128 cap = 0;
};

class RobustKnapsack {
 public:
  RobustKnapsack(const SockpInstance& inst, const Decimal& omega, std::int64_t m, Budget delta,
                 Scheme scheme = Scheme::kHorizontal)
      : inst_(&inst), table_(inst, omega, m, scheme), m_(m), delta_(delta) {
    inst.validate();
    if (delta.quarters < 0) throw std::invalid_argument("rkpm: negative budget");
    const std::size_t n = inst.size();
    if (scheme == Scheme::kVertical) {
      item_d_.assign(n, {});
      item_prefix_d_.assign(n, {0.0L});
      for (std::size_t j = 0; j < n; ++j) item_d_[j].resize(static_cast<std::size_t>(m));
      for (const Segment& seg : table_.entries()) {
        item_d_[seg.item][static_cast<std::size_t>(seg.k - 1)] = seg.d;
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (long double d : item_d_[j]) item_prefix_d_[j].push_back(item_prefix_d_[j].back() + d);
      }
    }
  }

  const SegmentTable& table() const { return table_; }
  std::int64_t m() const { return m_; }
  Budget delta() const { return delta_; }
  std::size_t dummy() const { return table_.entries().size() + 1; }

  /// Pivot ranks (1-based) whose union describes the robust feasible set.
  std::vector<std::size_t> pivot_family(PivotFamily family = PivotFamily::kComplete) const {
    std::vector<std::size_t> out;
    const std::size_t nm = table_.entries().size();
    if (auto start = table_.pivot_start(delta_)) {
      const std::size_t last = family == PivotFamily::kComplete ? nm : nm - 1;
      for (std::size_t l = *start; l <= last; ++l) out.push_back(l);
    }
    out.push_back(dummy());
    return out;
  }

  ExactSubproblem exact_subproblem(std::size_t label) const {
    require_horizontal("exact_subproblem");
    const IntegerView& v = table_.view();
    const auto [g, f] = pivot_coefficients(label);
    const i128 p = detail::pow10(v.ss + v.so);
    const i128 ta = detail::pow10(v.sa);
    const i128 base = detail::checked_mul(detail::checked_mul(p, m_), f);
    const i128 wt = detail::checked_mul(v.omega, ta);
    ExactSubproblem out;
    out.num.reserve(inst_->size());
    for (std::size_t j = 0; j < inst_->size(); ++j) {
      const std::int64_t s = v.sigmas[j];
      const std::int64_t k = count_above(s, g, f);
      // G_j f - g F_j with G_j = k s and F_j = k^2.
      const i128 excess = detail::checked_sub(detail::checked_mul(k * s, f),
                                              detail::checked_mul(g, k * k));
      if (excess < 0) throw InvariantViolation("rkpm: negative modified weight");
      const i128 num = detail::checked_add(detail::checked_mul(v.means[j], base),
                                           detail::checked_mul(wt, excess));
      out.num.push_back(detail::checked_mul(4, num));
    }
    out.den = detail::checked_mul(detail::checked_mul(4, base), ta);
    out.cap = detail::checked_sub(detail::checked_mul(detail::checked_mul(4, v.capacity), base),
                                  detail::checked_mul(detail::checked_mul(wt, g), delta_.quarters));
    return out;
  }

  /// Exact membership of x in B_label.
  bool in_subproblem(std::size_t label, const Selection& x) const {
    const ExactSubproblem sp = exact_subproblem(label);
    i128 load = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j]) load = detail::checked_add(load, sp.num[j]);
    }
    return load <= sp.cap;
  }

  /// Exact test of  a'x + beta(x, Delta) <= b.
  bool in_robust_set(const Selection& x) const {
    const IntegerView& v = table_.view();
    const ExactBeta bt = beta_exact(x, table_, delta_);
    BigInt load = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j]) load += v.means[j];
    }
    BigInt ta = 1;
    for (int i = 0; i < v.sa; ++i) ta *= 10;
    // (B - load) / ta >= num / den
    return (BigInt(v.capacity) - load) * bt.den >= bt.num * ta;
  }

  /// B_label integerized for the knapsack solver; nullopt when its capacity is negative.
  std::optional<KnapsackSubproblem> subproblem(std::size_t label, const RkpmOptions& options) const {
    KnapsackSubproblem sp;
    sp.profits = inst_->profits;
    sp.origin_label = static_cast<std::int64_t>(label);
    if (table_.scheme() == Scheme::kVertical) {
      if (!vertical_subproblem(label, options.scale_factor, sp)) return std::nullopt;
      return sp;
    }
    const ExactSubproblem ex = exact_subproblem(label);
    if (ex.cap < 0) return std::nullopt;
    if (options.scaling == SubproblemScaling::kExactWhenPossible && exact_integers(ex, sp)) {
      return sp;
    }
    const i128 factor = options.scale_factor;
    sp.weights.clear();
    for (i128 num : ex.num) {
      sp.weights.push_back(detail::narrow_i64(detail::ceil_div(detail::checked_mul(num, factor), ex.den)));
    }
    sp.capacity = detail::narrow_i64(detail::floor_div(detail::checked_mul(ex.cap, factor), ex.den));
    if (sp.capacity < 0) return std::nullopt;
    return sp;
  }

  BoundResult solve(BoundKind kind, const RkpmOptions& options = {}) const {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::size_t> labels = distinct_pivots(options.family);

    struct Candidate {
      std::size_t label;
      std::int64_t bound;
    };
    std::vector<std::optional<Candidate>> bounds(labels.size());
    auto compute_bound = [&](std::size_t i) {
      if (auto sp = subproblem(labels[i], options)) {
        bounds[i] = Candidate{labels[i], dantzig_bound(*sp).value()};
      }
    };
    const int threads = std::max(1, options.threads);
    if (threads == 1 || labels.size() < 2) {
      for (std::size_t i = 0; i < labels.size(); ++i) compute_bound(i);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (auto i = static_cast<std::size_t>(t); i < labels.size(); i += static_cast<std::size_t>(threads)) {
            compute_bound(i);
          }
        });
      }
      for (auto& th : pool) th.join();
    }

    BoundResult result;
    result.kind = kind;
    result.m = m_;
    result.delta = delta_;
    result.solution.assign(inst_->size(), false);
    std::vector<Candidate> order;
    for (const auto& c : bounds) {
      if (c) {
        order.push_back(*c);
      } else {
        ++result.subproblems_skipped;
      }
    }
    std::sort(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) {
      return a.bound != b.bound ? a.bound > b.bound : a.label < b.label;
    });

    std::int64_t best = -1;
    std::size_t best_label = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Candidate& c = order[i];
      if (options.prune && best >= 0) {
        if (c.bound < best || (c.bound == best && c.label > best_label)) {
          ++result.subproblems_pruned;
          continue;
        }
      }
      KnapsackOptions kopt = options.knapsack;
      if (options.prune && best >= 0) kopt.cutoff = c.label < best_label ? best - 1 : best;
      const KnapsackSolution sol = solve_knapsack(*subproblem(c.label, options), kopt);
      ++result.subproblems_solved;
      if (sol.status != KnapsackStatus::kOptimal) continue;
      if (sol.value > best || (sol.value == best && c.label < best_label)) {
        best = sol.value;
        best_label = c.label;
        result.solution = sol.selected;
      }
    }
    result.objective = std::max<std::int64_t>(best, 0);
    result.pivot = best_label;
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
  }

 private:
  void require_horizontal(const char* what) const {
    if (table_.scheme() != Scheme::kHorizontal) {
      throw std::invalid_argument(std::string(what) + ": only defined for the horizontal scheme");
    }
  }

  // (g, f) of the pivot; the dummy has ratio 0 with f = 1.
  std::pair<std::int64_t, std::int64_t> pivot_coefficients(std::size_t label) const {
    if (label == dummy()) return {0, 1};
    if (label < 1 || label > table_.entries().size()) throw std::out_of_range("rkpm: pivot rank out of range");
    const Segment& seg = table_.entries()[label - 1];
    return {seg.g, seg.f};
  }

  // Number of segments k of an item with sigma numerator s whose ratio
  // s / (2k - 1) strictly exceeds g / f.
  std::int64_t count_above(std::int64_t s, std::int64_t g, std::int64_t f) const {
    if (s == 0) return 0;
    if (g == 0) return m_;
    // (2k - 1) g < s f  <=>  k <= ceil(s f / g) / 2
    const i128 q = detail::ceil_div(static_cast<i128>(s) * f, g);
    return static_cast<std::int64_t>(std::min<i128>(m_, q / 2));
  }

  // One representative per group of equal ratios; zero-ratio pivots coincide with the dummy.
  std::vector<std::size_t> distinct_pivots(PivotFamily family) const {
    std::vector<std::size_t> out;
    const auto& entries = table_.entries();
    std::size_t prev = 0;
    for (std::size_t label : pivot_family(family)) {
      if (label == dummy()) {
        out.push_back(label);
        continue;
      }
      const Segment& seg = entries[label - 1];
      if (seg.d == 0 || seg.g == 0) continue;
      if (prev != 0 && table_.compare(entries[prev - 1], seg) == 0) continue;
      prev = label;
      out.push_back(label);
    }
    return out;
  }

  static bool exact_integers(const ExactSubproblem& ex, KnapsackSubproblem& sp) {
    constexpr i128 kLimit = i128{1} << 61;
    i128 g = ex.cap;
    for (i128 num : ex.num) g = detail::gcd(g, num);
    if (g == 0) g = 1;
    i128 total = 0;
    for (i128 num : ex.num) {
      total += num / g;
      if (total > kLimit) return false;
    }
    if (ex.cap / g > kLimit) return false;
    sp.weights.clear();
    for (i128 num : ex.num) sp.weights.push_back(static_cast<std::int64_t>(num / g));
    sp.capacity = static_cast<std::int64_t>(ex.cap / g);
    return true;
  }

  bool vertical_subproblem(std::size_t label, std::int64_t factor, KnapsackSubproblem& sp) const {
    const long double dl = label == dummy() ? 0.0L : table_.entries()[label - 1].d;
    const long double cap = inst_->capacity.to_long_double() - dl * delta_.value();
    const long double c = std::floor(cap * factor);
    if (c < 0) return false;
    constexpr long double kLimit = 4.0e18L;
    if (c > kLimit) throw std::overflow_error("rkpm: scaled capacity exceeds 64-bit range");
    sp.capacity = static_cast<std::int64_t>(c);
    sp.weights.clear();
    for (std::size_t j = 0; j < inst_->size(); ++j) {
      const auto& d = item_d_[j];
      // segments of one item have non-increasing d; count those strictly above dl
      const auto k = static_cast<std::size_t>(
          std::lower_bound(d.begin(), d.end(), dl, [](long double a, long double b) { return a > b; }) -
          d.begin());
      const long double w =
          inst_->means[j].to_long_double() + item_prefix_d_[j][k] - dl * static_cast<long double>(k);
      const long double scaled = std::ceil(std::max(0.0L, w) * factor);
      if (scaled > kLimit) throw std::overflow_error("rkpm: scaled weight exceeds 64-bit range");
      sp.weights.push_back(static_cast<std::int64_t>(scaled));
    }
    return true;
  }

  const SockpInstance* inst_;
  SegmentTable table_;
  std::int64_t m_;
  Budget delta_;
  std::vector<std::vector<long double>> item_d_;
  std::vector<std::vector<long double>> item_prefix_d_;
};

inline BoundResult solve_rkpm(const SockpInstance& inst, const Decimal& omega, std::int64_t m,
                              Budget delta, BoundKind kind, const RkpmOptions& options = {}) {
  return RobustKnapsack(inst, omega, m, delta, options.scheme).solve(kind, options);
}

inline BoundResult upper_bound(const SockpInstance& inst, const Decimal& omega, std::int64_t m,
                               const RkpmOptions& options = {}) {
  const Budget delta =
      options.scheme == Scheme::kVertical ? Budget::vertical(m) : Budget::inner(m);
  return solve_rkpm(inst, omega, m, delta, BoundKind::kUpper, options);
}

inline BoundResult lower_bound(const SockpInstance& inst, const Decimal& omega, std::int64_t m,
                               const RkpmOptions& options = {}) {
  if (options.scheme != Scheme::kHorizontal) {
    throw std::invalid_argument("lower_bound: only the horizontal scheme yields feasible solutions");
  }
  const auto n = static_cast<std::int64_t>(inst.size());
  BoundResult r = solve_rkpm(inst, omega, m, Budget::outer(n, m), BoundKind::kLower, options);
  if (!is_soc_feasible(r.solution, inst, omega)) {
    throw InvariantViolation("lower_bound: solution violates the SOC constraint");
  }
  return r;
}

}  // namespace sockp

#endif  // SOCKP_RKPM_HPP
