#ifndef SOCKP_EXACT_HPP
#define SOCKP_EXACT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sockp/model.hpp"
#include "sockp/rkpm.hpp"

namespace sockp {

/// Segment count beyond which the inner approximation is exact:
/// ceil(sqrt(n * sum_j c_j^2) / 2) + 1 with c_j = 10^s * omega * sigma_j, where
/// s is the smallest power making the means, the capacity and every
/// omega * sigma_j integral.
inline BigInt m_star(const SockpInstance& inst, const Decimal& omega) {
  std::vector<Decimal> spreads;
  spreads.reserve(inst.size());
  int s = inst.capacity.scale();
  for (const auto& a : inst.means) s = std::max(s, a.scale());
  for (const auto& sigma : inst.sigmas) {
    spreads.push_back(omega * sigma);
    s = std::max(s, spreads.back().scale());
  }
  BigInt total = 0;
  for (const auto& c : spreads) {
    BigInt v = BigInt(c.units());
    for (int i = c.scale(); i < s; ++i) v *= 10;
    total += v * v;
  }
  total *= static_cast<std::int64_t>(inst.size());
  const BigInt r = boost::multiprecision::sqrt(total);
  // ceil(sqrt(T) / 2): r / 2 rounded up when T is a square, floor(r / 2) + 1 otherwise.
  const BigInt half = r * r == total ? BigInt((r + 1) / 2) : BigInt(r / 2 + 1);
  return half + 1;
}

struct ExactIteration {
  std::int64_t m = 0;
  std::int64_t objective = 0;
  std::int64_t subproblems_solved = 0;
  bool feasible = false;
};

struct ExactResult {
  BoundResult bound;  // kind = kExact
  std::int64_t iterations = 0;
  std::int64_t knapsack_solves = 0;
  std::vector<ExactIteration> log;
};

inline std::int64_t initial_segments(std::size_t n) {
  std::int64_t m = 1;
  while (4 * m * m < static_cast<std::int64_t>(n)) ++m;
  return m;
}

/// Doubling algorithm: tighten the inner approximation until its optimum
/// satisfies the SOC constraint.
inline ExactResult solve_exact(const SockpInstance& inst, const Decimal& omega,
                               const RkpmOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();
  RkpmOptions opts = options;
  opts.scheme = Scheme::kHorizontal;
  const SocConstraint soc(inst, omega);

  ExactResult out;
  out.bound.kind = BoundKind::kExact;
  out.bound.solution.assign(inst.size(), true);
  out.bound.objective = profit_of(out.bound.solution, inst.profits);

  std::int64_t m = initial_segments(inst.size());
  out.bound.m = m;
  std::optional<BigInt> cap;
  bool feasible = soc.feasible(out.bound.solution);
  while (!feasible) {
    if (!cap) cap = m_star(inst, omega);
    bool last = false;
    if (BigInt(2 * m) >= *cap) {
      m = static_cast<std::int64_t>(*cap);
      last = true;
    } else {
      m *= 2;
    }
    BoundResult r = upper_bound(inst, omega, m, opts);
    ++out.iterations;
    out.knapsack_solves += r.subproblems_solved;
    feasible = soc.feasible(r.solution);
    out.log.push_back({m, r.objective, r.subproblems_solved, feasible});
    out.bound = std::move(r);
    out.bound.kind = BoundKind::kExact;
    if (last && !feasible) {
      throw InvariantViolation("solve_exact: solution at m* violates the SOC constraint");
    }
  }
  out.bound.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace sockp

#endif  // SOCKP_EXACT_HPP
