#ifndef SOCKP_TOOLKIT_BENCH_HPP
#define SOCKP_TOOLKIT_BENCH_HPP

// Benchmark harness: bound gaps per m, exact-solver statistics, and the
// horizontal/vertical scheme comparison. Rows come out in the nested loop
// order of the configuration, which makes the reports deterministic.

#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "sockp/exact.hpp"
#include "sockp/rkpm.hpp"
#include "sockp/toolkit/generate.hpp"
#include "sockp/toolkit/io.hpp"

namespace sockp::toolkit {

struct BenchConfig {
  std::vector<Family> families;
  std::vector<std::int64_t> sizes;
  std::vector<double> rhos;
  std::vector<std::int64_t> m_grid;
  std::vector<std::uint64_t> seeds;
  Ambiguity ambiguity = Ambiguity::kMomentChebyshev;
  RkpmOptions options;
};

struct BoundsRow {
  std::string family;
  std::int64_t n = 0;
  double rho = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  std::int64_t ub = 0;
  std::int64_t lb = 0;
  double gap_pct = 0;
  double time_ms = 0;
};

struct ExactRow {
  std::string family;
  std::int64_t n = 0;
  double rho = 0;
  std::uint64_t seed = 0;
  std::int64_t iters = 0;
  std::int64_t m_final = 0;
  std::int64_t knap_solves = 0;
  double time_ms = 0;
  std::int64_t objective = 0;
};

struct SchemeRow {
  std::string family;
  std::int64_t n = 0;
  double rho = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  std::string scheme;
  std::int64_t ub = 0;
  double time_ms = 0;
};

inline OmegaSpec omega_for(Ambiguity kind, double rho) {
  switch (kind) {
    case Ambiguity::kNormal: return OmegaSpec::normal(rho);
    case Ambiguity::kMomentChebyshev: return OmegaSpec::chebyshev(rho);
    case Ambiguity::kDelageYe: return OmegaSpec::delage_ye(rho, 0.0, 1.0);
    default: throw std::invalid_argument("bench: unsupported ambiguity kind");
  }
}

inline double gap_percent(std::int64_t ub, std::int64_t lb) {
  return lb > 0 ? 100.0 * static_cast<double>(ub - lb) / static_cast<double>(lb) : 0.0;
}

inline double millis(std::chrono::nanoseconds d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

template <class Fn>
void for_each_instance(const BenchConfig& cfg, Fn&& fn) {
  for (Family family : cfg.families) {
    for (std::int64_t n : cfg.sizes) {
      for (double rho : cfg.rhos) {
        for (std::uint64_t seed : cfg.seeds) {
          const SockpInstance inst = generate({family, n, seed, omega_for(cfg.ambiguity, rho)});
          fn(family, n, rho, seed, inst);
        }
      }
    }
  }
}

inline std::vector<BoundsRow> run_bounds_bench(const BenchConfig& cfg) {
  std::vector<BoundsRow> rows;
  for_each_instance(cfg, [&](Family family, std::int64_t n, double rho, std::uint64_t seed,
                             const SockpInstance& inst) {
    for (std::int64_t m : cfg.m_grid) {
      const BoundResult ub = upper_bound(inst, *inst.omega, m, cfg.options);
      const BoundResult lb = lower_bound(inst, *inst.omega, m, cfg.options);
      rows.push_back({family_name(family), n, rho, m, seed, ub.objective, lb.objective,
                      gap_percent(ub.objective, lb.objective), millis(ub.wall_time + lb.wall_time)});
    }
  });
  return rows;
}

inline std::vector<ExactRow> run_exact_bench(const BenchConfig& cfg) {
  std::vector<ExactRow> rows;
  for_each_instance(cfg, [&](Family family, std::int64_t n, double rho, std::uint64_t seed,
                             const SockpInstance& inst) {
    const ExactResult r = solve_exact(inst, *inst.omega, cfg.options);
    rows.push_back({family_name(family), n, rho, seed, r.iterations, r.bound.m, r.knapsack_solves,
                    millis(r.bound.wall_time), r.bound.objective});
  });
  return rows;
}

inline std::vector<SchemeRow> run_scheme_comparison(const BenchConfig& cfg) {
  std::vector<SchemeRow> rows;
  for_each_instance(cfg, [&](Family family, std::int64_t n, double rho, std::uint64_t seed,
                             const SockpInstance& inst) {
    for (std::int64_t m : cfg.m_grid) {
      for (Scheme scheme : {Scheme::kHorizontal, Scheme::kVertical}) {
        RkpmOptions opts = cfg.options;
        opts.scheme = scheme;
        const BoundResult ub = upper_bound(inst, *inst.omega, m, opts);
        rows.push_back({family_name(family), n, rho, m, seed,
                        scheme == Scheme::kHorizontal ? "horizontal" : "vertical", ub.objective,
                        millis(ub.wall_time)});
      }
    }
  });
  return rows;
}

struct BoundsSummary {
  std::string family;
  std::int64_t n = 0;
  double rho = 0;
  std::int64_t m = 0;
  std::size_t count = 0;
  double mean_gap_pct = 0;
  double mean_time_ms = 0;
};

/// Mean gap and time per (family, n, rho, m), ordered by that key.
inline std::vector<BoundsSummary> summarize(const std::vector<BoundsRow>& rows) {
  std::map<std::tuple<std::string, std::int64_t, double, std::int64_t>, BoundsSummary> acc;
  for (const auto& r : rows) {
    auto& s = acc[{r.family, r.n, r.rho, r.m}];
    s.family = r.family;
    s.n = r.n;
    s.rho = r.rho;
    s.m = r.m;
    ++s.count;
    s.mean_gap_pct += r.gap_pct;
    s.mean_time_ms += r.time_ms;
  }
  std::vector<BoundsSummary> out;
  for (auto& [key, s] : acc) {
    s.mean_gap_pct /= static_cast<double>(s.count);
    s.mean_time_ms /= static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

// CSV / JSON emitters

inline void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
  os << "family,n,rho,m,seed,ub,lb,gap_pct,time_ms\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.n << ',' << format_double(r.rho, 4) << ',' << r.m << ',' << r.seed << ','
       << r.ub << ',' << r.lb << ',' << format_double(r.gap_pct, 4) << ',' << format_double(r.time_ms, 3)
       << '\n';
  }
}

inline void write_csv(std::ostream& os, const std::vector<ExactRow>& rows) {
  os << "family,n,rho,seed,iters,m_final,knap_solves,time_ms,objective\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.n << ',' << format_double(r.rho, 4) << ',' << r.seed << ',' << r.iters << ','
       << r.m_final << ',' << r.knap_solves << ',' << format_double(r.time_ms, 3) << ',' << r.objective
       << '\n';
  }
}

inline void write_csv(std::ostream& os, const std::vector<SchemeRow>& rows) {
  os << "family,n,rho,m,seed,scheme,ub,time_ms\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.n << ',' << format_double(r.rho, 4) << ',' << r.m << ',' << r.seed << ','
       << r.scheme << ',' << r.ub << ',' << format_double(r.time_ms, 3) << '\n';
  }
}

inline json to_json(const std::vector<BoundsRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", r.family}, {"n", r.n}, {"rho", r.rho}, {"m", r.m}, {"seed", r.seed},
                   {"ub", r.ub}, {"lb", r.lb}, {"gap_pct", r.gap_pct}, {"time_ms", r.time_ms}});
  }
  return out;
}

inline json to_json(const std::vector<ExactRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", r.family}, {"n", r.n}, {"rho", r.rho}, {"seed", r.seed}, {"iters", r.iters},
                   {"m_final", r.m_final}, {"knap_solves", r.knap_solves}, {"time_ms", r.time_ms},
                   {"objective", r.objective}});
  }
  return out;
}

inline json to_json(const std::vector<SchemeRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", r.family}, {"n", r.n}, {"rho", r.rho}, {"m", r.m}, {"seed", r.seed},
                   {"scheme", r.scheme}, {"ub", r.ub}, {"time_ms", r.time_ms}});
  }
  return out;
}

inline json to_json(const std::vector<BoundsSummary>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", r.family}, {"n", r.n}, {"rho", r.rho}, {"m", r.m}, {"count", r.count},
                   {"mean_gap_pct", r.mean_gap_pct}, {"mean_time_ms", r.mean_time_ms}});
  }
  return out;
}

}  // namespace sockp::toolkit

#endif  // SOCKP_TOOLKIT_BENCH_HPP
