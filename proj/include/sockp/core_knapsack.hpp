#ifndef SOCKP_CORE_KNAPSACK_HPP
#define SOCKP_CORE_KNAPSACK_HPP

// Exact 0/1 knapsack with integer profits and scaled-integer weights.
//
// Two exact engines share one preprocessing step (drop useless items, take
// zero-weight items, sort by efficiency, locate the break item):
//   * dynamic programming by profits, O(n U) with U the Dantzig bound;
//   * an expanding-core dynamic program that starts from the break solution
//     and alternately adds/removes items around the break item, keeping only
//     undominated (profit, weight) states whose LP bound beats the incumbent.
// kAuto uses the profit DP for small tables and the core otherwise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sockp/detail/int128.hpp"

namespace sockp {

using Selection = std::vector<bool>;

struct KnapsackSubproblem {
  std::vector<std::int64_t> profits;
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
  std::optional<std::int64_t> origin_label;

  std::size_t size() const { return profits.size(); }
};

enum class KnapsackStatus {
  kOptimal,
  kInfeasible,  // capacity < 0: no selection, not even the empty one, fits
  kCutoff,      // optimum proven <= KnapsackOptions::cutoff; no selection returned
};

struct KnapsackSolution {
  Selection selected;
  std::int64_t value = 0;
  KnapsackStatus status = KnapsackStatus::kOptimal;
};

enum class KnapsackAlgorithm { kAuto, kProfitDp, kExpandingCore };

struct KnapsackOptions {
  KnapsackAlgorithm algorithm = KnapsackAlgorithm::kAuto;
  // Largest profit-DP table (U + 1 entries) before the core engine is used.
  std::int64_t dp_state_cap = 10'000'000;
  // kAuto picks the profit DP when n * (U + 1) stays below this.
  std::int64_t auto_dp_work = 1 << 16;
  // When set, only selections worth strictly more than this are of interest.
  std::optional<std::int64_t> cutoff;
};

struct ScaledWeights {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
};

/// Conservative integerization: weights are rounded up and the capacity down,
/// so every selection feasible after scaling is feasible before it.
inline ScaledWeights scale_to_integers(std::span<const double> weights, double capacity,
                                       std::int64_t factor) {
  if (factor < 1) throw std::invalid_argument("scale_to_integers: factor must be >= 1");
  constexpr long double kLimit = 9.2e18L;
  auto convert = [&](long double v) {
    if (!std::isfinite(v) || std::fabs(v) >= kLimit) {
      throw std::overflow_error("scale_to_integers: scaled value exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
  };
  ScaledWeights out;
  out.weights.reserve(weights.size());
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("scale_to_integers: weights must be >= 0");
    out.weights.push_back(convert(std::ceil(static_cast<long double>(w) * factor)));
  }
  out.capacity = convert(std::floor(static_cast<long double>(capacity) * factor));
  return out;
}

namespace detail {

struct CoreItem {
  std::int64_t profit;
  std::int64_t weight;
  std::size_t index;
};

struct PreparedKnapsack {
  std::vector<CoreItem> items;  // sorted by non-increasing efficiency
  std::vector<std::size_t> forced;
  std::int64_t forced_profit = 0;
  std::size_t break_item = 0;  // first item of `items` that does not fit greedily
  std::int64_t break_profit = 0;
  std::int64_t break_weight = 0;
  std::int64_t bound = 0;  // Dantzig bound over `items`
};

inline void validate(const KnapsackSubproblem& problem) {
  if (problem.profits.size() != problem.weights.size()) {
    throw std::invalid_argument("knapsack: profits and weights differ in length");
  }
  for (std::size_t j = 0; j < problem.size(); ++j) {
    if (problem.profits[j] < 0) throw std::invalid_argument("knapsack: negative profit");
    if (problem.weights[j] < 0) throw std::invalid_argument("knapsack: negative weight");
  }
}

inline PreparedKnapsack prepare(const KnapsackSubproblem& problem) {
  PreparedKnapsack pr;
  const std::int64_t c = problem.capacity;
  for (std::size_t j = 0; j < problem.size(); ++j) {
    const std::int64_t p = problem.profits[j];
    const std::int64_t w = problem.weights[j];
    if (p == 0) continue;
    if (w == 0) {
      pr.forced.push_back(j);
      pr.forced_profit += p;
      continue;
    }
    if (w > c) continue;
    pr.items.push_back({p, w, j});
  }
  std::sort(pr.items.begin(), pr.items.end(), [](const CoreItem& a, const CoreItem& b) {
    const i128 lhs = static_cast<i128>(a.profit) * b.weight;
    const i128 rhs = static_cast<i128>(b.profit) * a.weight;
    if (lhs != rhs) return lhs > rhs;
    return a.index < b.index;
  });
  std::size_t b = 0;
  std::int64_t wsum = 0;
  std::int64_t psum = 0;
  while (b < pr.items.size() && wsum + pr.items[b].weight <= c) {
    wsum += pr.items[b].weight;
    psum += pr.items[b].profit;
    ++b;
  }
  pr.break_item = b;
  pr.break_profit = psum;
  pr.break_weight = wsum;
  pr.bound = psum;
  if (b < pr.items.size()) {
    const i128 extra = static_cast<i128>(c - wsum) * pr.items[b].profit / pr.items[b].weight;
    pr.bound = psum + static_cast<std::int64_t>(extra);
  }
  return pr;
}

inline KnapsackSolution finish(const KnapsackSubproblem& problem, const PreparedKnapsack& pr,
                               const std::vector<std::size_t>& chosen_positions) {
  KnapsackSolution sol;
  sol.selected.assign(problem.size(), false);
  sol.value = pr.forced_profit;
  for (std::size_t j : pr.forced) sol.selected[j] = true;
  for (std::size_t pos : chosen_positions) {
    sol.selected[pr.items[pos].index] = true;
    sol.value += pr.items[pos].profit;
  }
  return sol;
}

inline std::optional<KnapsackSolution> solve_profit_dp(const KnapsackSubproblem& problem,
                                                       const PreparedKnapsack& pr,
                                                       const KnapsackOptions& options) {
  const std::int64_t upper = pr.bound;
  if (upper + 1 > options.dp_state_cap) return std::nullopt;
  const std::size_t k = pr.items.size();
  const std::size_t width = static_cast<std::size_t>(upper) + 1;
  const std::size_t words = (width + 63) / 64;
  constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();
  const std::int64_t c = problem.capacity;

  std::vector<std::int64_t> min_weight(width, kUnreachable);
  std::vector<std::uint64_t> took(k * words, 0);
  min_weight[0] = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto p = static_cast<std::size_t>(pr.items[i].profit);
    const std::int64_t w = pr.items[i].weight;
    if (p >= width) continue;
    std::uint64_t* bits = took.data() + i * words;
    for (std::size_t target = width - 1; target >= p; --target) {
      const std::int64_t prev = min_weight[target - p];
      if (prev == kUnreachable) {
        if (target == p) break;
        continue;
      }
      const std::int64_t cand = prev + w;
      if (cand <= c && cand < min_weight[target]) {
        min_weight[target] = cand;
        bits[target / 64] |= std::uint64_t{1} << (target % 64);
      }
      if (target == p) break;
    }
  }
  std::size_t best = width - 1;
  while (min_weight[best] == kUnreachable) --best;

  if (options.cutoff && pr.forced_profit + static_cast<std::int64_t>(best) <= *options.cutoff) {
    return KnapsackSolution{{}, 0, KnapsackStatus::kCutoff};
  }
  std::vector<std::size_t> chosen;
  std::size_t target = best;
  for (std::size_t i = k; i-- > 0;) {
    const std::uint64_t* bits = took.data() + i * words;
    if (bits[target / 64] >> (target % 64) & 1U) {
      chosen.push_back(i);
      target -= static_cast<std::size_t>(pr.items[i].profit);
    }
  }
  return finish(problem, pr, chosen);
}

inline KnapsackSolution solve_expanding_core(const KnapsackSubproblem& problem,
                                             const PreparedKnapsack& pr,
                                             const KnapsackOptions& options) {
  struct State {
    std::int64_t profit;
    std::int64_t weight;
    std::int32_t node;
  };
  struct Node {
    std::int32_t item;
    std::int32_t parent;
  };

  const auto& items = pr.items;
  const std::int64_t c = problem.capacity;
  const auto k = static_cast<std::ptrdiff_t>(items.size());

  std::vector<Node> nodes;
  std::vector<State> states{{pr.break_profit, pr.break_weight, -1}};
  std::vector<State> merged;

  // Incumbent is relative to the non-forced items.
  std::int64_t best = pr.break_profit;
  std::int32_t best_node = -1;
  bool have_best = true;
  if (options.cutoff && *options.cutoff - pr.forced_profit >= best) {
    best = *options.cutoff - pr.forced_profit;
    have_best = false;
  }

  std::ptrdiff_t s = static_cast<std::ptrdiff_t>(pr.break_item) - 1;
  auto t = static_cast<std::ptrdiff_t>(pr.break_item);

  auto merge = [&](std::ptrdiff_t pos, bool add) {
    const std::int64_t dp = add ? items[pos].profit : -items[pos].profit;
    const std::int64_t dw = add ? items[pos].weight : -items[pos].weight;
    merged.clear();
    merged.reserve(states.size() * 2);
    std::int64_t last_profit = std::numeric_limits<std::int64_t>::min();
    std::size_t a = 0;
    std::size_t b = 0;
    auto push = [&](State st, bool shifted, std::int32_t parent) {
      if (st.profit <= last_profit) return;
      if (shifted) {
        nodes.push_back({static_cast<std::int32_t>(pos), parent});
        st.node = static_cast<std::int32_t>(nodes.size() - 1);
      }
      last_profit = st.profit;
      if (st.weight <= c && st.profit > best) {
        best = st.profit;
        best_node = st.node;
        have_best = true;
      }
      merged.push_back(st);
    };
    while (a < states.size() || b < states.size()) {
      const bool take_original = [&] {
        if (b == states.size()) return true;
        if (a == states.size()) return false;
        const std::int64_t wa = states[a].weight;
        const std::int64_t wb = states[b].weight + dw;
        if (wa != wb) return wa < wb;
        return states[a].profit >= states[b].profit + dp;
      }();
      if (take_original) {
        push(states[a], false, 0);
        ++a;
      } else {
        State shifted{states[b].profit + dp, states[b].weight + dw, 0};
        push(shifted, true, states[b].node);
        ++b;
      }
    }
    states.swap(merged);
  };

  auto reduce = [&] {
    const i128 target = static_cast<i128>(best) + 1;
    std::erase_if(states, [&](const State& st) {
      if (st.weight <= c) {
        if (t < k) {
          return (static_cast<i128>(st.profit) - target) * items[t].weight +
                     static_cast<i128>(c - st.weight) * items[t].profit < 0;
        }
        return st.profit < target;
      }
      if (s >= 0) {
        return (static_cast<i128>(st.profit) - target) * items[s].weight -
                   static_cast<i128>(st.weight - c) * items[s].profit < 0;
      }
      return true;
    });
  };

  reduce();
  while (!states.empty() && (t < k || s >= 0)) {
    if (t < k) {
      merge(t, true);
      ++t;
      reduce();
    }
    if (states.empty()) break;
    if (s >= 0) {
      merge(s, false);
      --s;
      reduce();
    }
  }

  if (!have_best) return KnapsackSolution{{}, 0, KnapsackStatus::kCutoff};

  std::vector<bool> in_break(items.size(), false);
  for (std::size_t i = 0; i < pr.break_item; ++i) in_break[i] = true;
  for (std::int32_t node = best_node; node >= 0; node = nodes[static_cast<std::size_t>(node)].parent) {
    const auto item = static_cast<std::size_t>(nodes[static_cast<std::size_t>(node)].item);
    in_break[item] = !in_break[item];
  }
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (in_break[i]) chosen.push_back(i);
  }
  return finish(problem, pr, chosen);
}

}  // namespace detail

/// Dantzig (LP) upper bound on the optimal value, or nullopt when capacity < 0.
inline std::optional<std::int64_t> dantzig_bound(const KnapsackSubproblem& problem) {
  detail::validate(problem);
  if (problem.capacity < 0) return std::nullopt;
  const auto pr = detail::prepare(problem);
  return pr.forced_profit + pr.bound;
}

inline KnapsackSolution solve_knapsack(const KnapsackSubproblem& problem,
                                       const KnapsackOptions& options = {}) {
  detail::validate(problem);
  if (problem.capacity < 0) {
    return KnapsackSolution{Selection(problem.size(), false), 0, KnapsackStatus::kInfeasible};
  }
  const auto pr = detail::prepare(problem);
  if (options.cutoff && pr.forced_profit + pr.bound <= *options.cutoff) {
    return KnapsackSolution{{}, 0, KnapsackStatus::kCutoff};
  }
  if (pr.break_item == pr.items.size()) {
    std::vector<std::size_t> all(pr.items.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return detail::finish(problem, pr, all);
  }

  bool use_dp = options.algorithm == KnapsackAlgorithm::kProfitDp;
  if (options.algorithm == KnapsackAlgorithm::kAuto) {
    const i128 work = static_cast<i128>(pr.items.size()) * (pr.bound + 1);
    use_dp = work <= options.auto_dp_work;
  }
  if (use_dp) {
    if (auto sol = detail::solve_profit_dp(problem, pr, options)) return *sol;
  }
  return detail::solve_expanding_core(problem, pr, options);
}

}  // namespace sockp

#endif  // SOCKP_CORE_KNAPSACK_HPP
