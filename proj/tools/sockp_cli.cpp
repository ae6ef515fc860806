// sockp: command-line front end for the SOC-constrained knapsack solvers.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sockp/sockp.hpp"
#include "sockp/toolkit/bench.hpp"
#include "sockp/toolkit/generate.hpp"
#include "sockp/toolkit/io.hpp"

namespace {

using namespace sockp;
using namespace sockp::toolkit;

constexpr int kExitInvalidInput = 2;
constexpr int kExitInvariant = 3;

struct Common {
  std::string family = "SC";
  std::int64_t n = 100;
  std::uint64_t seed = 1;
  double rho = 0.95;
  std::string ambiguity;
  double gamma1 = 0.0;
  double gamma2 = 1.0;
  double support_width = 3.0;
  std::string instance;
  std::string out;
  std::string format = "json";
  int threads = 1;
  std::int64_t scale_factor = 1'000'000;
};

void add_generator_flags(CLI::App* app, Common& c) {
  app->add_option("--family", c.family, "instance family: SC, IC, SS, SCR, ICR")->capture_default_str();
  app->add_option("--n", c.n, "number of items")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "generator seed")->capture_default_str();
}

void add_omega_flags(CLI::App* app, Common& c) {
  app->add_option("--rho", c.rho, "confidence level in [0.5, 1)")->capture_default_str();
  app->add_option("--ambiguity", c.ambiguity, "normal | chebyshev | delage-ye | support")
      ->check(CLI::IsMember({"normal", "chebyshev", "delage-ye", "support"}));
  app->add_option("--gamma1", c.gamma1, "Delage-Ye mean ambiguity")->capture_default_str();
  app->add_option("--gamma2", c.gamma2, "Delage-Ye covariance ambiguity")->capture_default_str();
  app->add_option("--support-width", c.support_width,
                  "support ambiguity: interval mean -/+ width * sigma")
      ->capture_default_str();
}

void add_output_flags(CLI::App* app, Common& c, bool csv) {
  app->add_option("--out", c.out, "output file (default: stdout)");
  if (csv) {
    app->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }
}

void add_solver_flags(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker threads for subproblem bounds")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--scale-factor", c.scale_factor, "integer scaling factor for subproblem weights")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text(c.out, text);
  }
}

RkpmOptions solver_options(const Common& c) {
  RkpmOptions o;
  o.threads = c.threads;
  o.scale_factor = c.scale_factor;
  return o;
}

OmegaSpec omega_spec(const Common& c, const SockpInstance* inst) {
  if (c.ambiguity == "normal") return OmegaSpec::normal(c.rho);
  if (c.ambiguity == "chebyshev") return OmegaSpec::chebyshev(c.rho);
  if (c.ambiguity == "delage-ye") return OmegaSpec::delage_ye(c.rho, c.gamma1, c.gamma2);
  if (c.ambiguity == "support") {
    std::vector<Decimal> lo;
    std::vector<Decimal> hi;
    if (inst != nullptr) {
      const Decimal w = Decimal::round_half_even(c.support_width, 6);
      for (std::size_t j = 0; j < inst->size(); ++j) {
        lo.push_back(inst->means[j] - w * inst->sigmas[j]);
        hi.push_back(inst->means[j] + w * inst->sigmas[j]);
      }
    }
    return OmegaSpec::support(c.rho, lo, hi);
  }
  return OmegaSpec::chebyshev(c.rho);
}

// An explicit --ambiguity replaces the stored omega; the support form also
// replaces the sigmas.
void apply_omega(SockpInstance& inst, const Common& c) {
  if (c.ambiguity.empty()) return;
  const ResolvedOmega r = resolve_omega(omega_spec(c, &inst));
  if (r.sigmas) inst = with_sigmas(std::move(inst), *r.sigmas);
  inst.omega = r.omega;
}

SockpInstance load_instance(const Common& c) {
  SockpInstance inst = c.instance.empty()
                           ? generate({parse_family(c.family), c.n, c.seed, OmegaSpec::chebyshev(c.rho)})
                           : read_instance(c.instance);
  apply_omega(inst, c);
  if (!inst.omega) throw std::invalid_argument("instance has no omega; pass --ambiguity");
  return inst;
}

template <class T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::stringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw std::invalid_argument("cannot parse list element '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Family> split_families(const std::string& text) {
  std::vector<Family> out;
  for (const auto& name : split_list<std::string>(text)) out.push_back(parse_family(name));
  return out;
}

std::vector<std::uint64_t> seed_list(const std::string& text) {
  if (text.find(',') == std::string::npos && text.find('-') != std::string::npos) {
    const auto dash = text.find('-');
    const auto lo = std::stoull(text.substr(0, dash));
    const auto hi = std::stoull(text.substr(dash + 1));
    std::vector<std::uint64_t> out;
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  return split_list<std::uint64_t>(text);
}

Ambiguity bench_ambiguity(const std::string& name) {
  if (name.empty() || name == "chebyshev") return Ambiguity::kMomentChebyshev;
  if (name == "normal") return Ambiguity::kNormal;
  if (name == "delage-ye") return Ambiguity::kDelageYe;
  throw std::invalid_argument("bench supports normal, chebyshev and delage-ye ambiguity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for binary knapsack problems with a second-order cone capacity constraint"};
  app.require_subcommand(1);
  Common c;

  auto* gen = app.add_subcommand("gen", "generate a benchmark instance as JSON");
  add_generator_flags(gen, c);
  add_omega_flags(gen, c);
  add_output_flags(gen, c, false);

  std::int64_t m = 10;
  std::string delta = "both";
  auto* bounds = app.add_subcommand("bounds", "upper and/or lower bound with m segments");
  add_generator_flags(bounds, c);
  add_omega_flags(bounds, c);
  bounds->add_option("--instance", c.instance, "instance JSON file (otherwise generated)");
  bounds->add_option("--m", m, "segments per item")->capture_default_str()->check(CLI::PositiveNumber);
  bounds->add_option("--delta", delta, "upper | lower | both")
      ->check(CLI::IsMember({"upper", "lower", "both"}))
      ->capture_default_str();
  add_output_flags(bounds, c, true);
  add_solver_flags(bounds, c);

  auto* exact = app.add_subcommand("exact", "optimal solution by the doubling algorithm");
  add_generator_flags(exact, c);
  add_omega_flags(exact, c);
  exact->add_option("--instance", c.instance, "instance JSON file (otherwise generated)");
  add_output_flags(exact, c, false);
  add_solver_flags(exact, c);

  double target = 0.01;
  auto* guarantee = app.add_subcommand("guarantee", "closed-form probability guarantee gaps");
  guarantee->add_option("--n", c.n, "number of items")->required()->check(CLI::PositiveNumber);
  guarantee->add_option("--m", m, "segments per item")->check(CLI::PositiveNumber);
  guarantee->add_option("--rho", c.rho, "confidence level")->capture_default_str();
  guarantee->add_option("--target", target, "gap target for the minimum segment counts")->capture_default_str();
  add_output_flags(guarantee, c, false);

  std::int64_t samples = 100'000;
  std::uint64_t mc_seed = 1;
  bool use_exact = false;
  auto* validate = app.add_subcommand("validate", "check a solution: exact SOC test and Monte Carlo sampling");
  add_generator_flags(validate, c);
  add_omega_flags(validate, c);
  validate->add_option("--instance", c.instance, "instance JSON file (otherwise generated)");
  validate->add_option("--m", m, "segments for the lower-bound solution")->capture_default_str()->check(CLI::PositiveNumber);
  validate->add_flag("--exact", use_exact, "validate the exact solution instead of the lower bound");
  validate->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  validate->add_option("--mc-seed", mc_seed, "Monte Carlo seed")->capture_default_str();
  add_output_flags(validate, c, false);
  add_solver_flags(validate, c);

  std::string kind = "bounds";
  std::string families = "SC";
  std::string sizes = "100";
  std::string rhos = "0.95";
  std::string m_grid = "5,10,20,40";
  std::string seeds = "1-10";
  bool summary = false;
  auto* bench = app.add_subcommand("bench", "bound-gap or exact-solver benchmark over generated instances");
  bench->add_option("--kind", kind, "bounds | exact")->check(CLI::IsMember({"bounds", "exact"}))->capture_default_str();
  bench->add_option("--family", families, "comma-separated families")->capture_default_str();
  bench->add_option("--n", sizes, "comma-separated sizes")->capture_default_str();
  bench->add_option("--rho", rhos, "comma-separated confidence levels")->capture_default_str();
  bench->add_option("--m", m_grid, "comma-separated segment counts")->capture_default_str();
  bench->add_option("--seed", seeds, "seed list 'a,b,c' or range 'a-b'")->capture_default_str();
  bench->add_option("--ambiguity", c.ambiguity, "normal | chebyshev | delage-ye");
  bench->add_flag("--summary", summary, "emit per-setting means instead of per-instance rows (bounds only)");
  add_output_flags(bench, c, true);
  add_solver_flags(bench, c);

  std::string cmp_m = "10,20,50,100";
  auto* compare = app.add_subcommand("compare-schemes", "upper bounds of the horizontal and vertical schemes");
  compare->add_option("--family", families, "comma-separated families")->capture_default_str();
  compare->add_option("--n", sizes, "comma-separated sizes")->capture_default_str();
  compare->add_option("--rho", rhos, "comma-separated confidence levels")->capture_default_str();
  compare->add_option("--m", cmp_m, "comma-separated segment counts")->capture_default_str();
  compare->add_option("--seed", seeds, "seed list 'a,b,c' or range 'a-b'")->capture_default_str();
  compare->add_option("--ambiguity", c.ambiguity, "normal | chebyshev | delage-ye");
  add_output_flags(compare, c, true);
  add_solver_flags(compare, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (gen->parsed()) {
      SockpInstance inst = generate({parse_family(c.family), c.n, c.seed, OmegaSpec::chebyshev(c.rho)});
      apply_omega(inst, c);
      emit(c, serialize(inst));
    } else if (bounds->parsed()) {
      const SockpInstance inst = load_instance(c);
      const RkpmOptions opts = solver_options(c);
      std::optional<BoundResult> ub;
      std::optional<BoundResult> lb;
      if (delta != "lower") ub = upper_bound(inst, *inst.omega, m, opts);
      if (delta != "upper") lb = lower_bound(inst, *inst.omega, m, opts);
      if (c.format == "csv") {
        std::ostringstream os;
        os << "kind,m,objective,subproblems_solved,subproblems_skipped,subproblems_pruned,time_ms\n";
        for (const auto* r : {ub ? &*ub : nullptr, lb ? &*lb : nullptr}) {
          if (r == nullptr) continue;
          os << kind_name(r->kind) << ',' << r->m << ',' << r->objective << ',' << r->subproblems_solved << ','
             << r->subproblems_skipped << ',' << r->subproblems_pruned << ','
             << format_double(millis(r->wall_time), 3) << '\n';
        }
        emit(c, os.str());
      } else {
        json j;
        j["n"] = inst.size();
        j["omega"] = inst.omega->to_string();
        if (ub) j["upper"] = to_json(*ub);
        if (lb) j["lower"] = to_json(*lb);
        if (ub && lb) j["gap_pct"] = gap_percent(ub->objective, lb->objective);
        emit(c, j.dump(2) + "\n");
      }
    } else if (exact->parsed()) {
      const SockpInstance inst = load_instance(c);
      const ExactResult r = solve_exact(inst, *inst.omega, solver_options(c));
      json j = to_json(r.bound);
      j["iterations"] = r.iterations;
      j["knapsack_solves"] = r.knapsack_solves;
      json log = json::array();
      for (const auto& it : r.log) {
        log.push_back({{"m", it.m}, {"objective", it.objective}, {"subproblems_solved", it.subproblems_solved},
                       {"feasible", it.feasible}});
      }
      j["log"] = std::move(log);
      emit(c, j.dump(2) + "\n");
    } else if (guarantee->parsed()) {
      json j;
      j["n"] = c.n;
      j["rho"] = c.rho;
      if (guarantee->count("--m") > 0) {
        j["m"] = m;
        if (4 * m * m >= c.n) j["gap_normal"] = guarantee_gap_normal(c.n, m, c.rho);
        if (4.0 * static_cast<double>(m * m) / static_cast<double>(c.n) > c.rho) {
          j["gap_dro"] = guarantee_gap_dro(c.n, m, c.rho);
        }
        const auto radii = containment_radii(c.n, m, 1.0);
        if (radii.inner) j["inner_radius_factor"] = *radii.inner;
        j["outer_radius_factor"] = radii.outer;
      }
      j["target"] = target;
      j["min_segments_dro"] = min_segments_dro(c.n, c.rho, target);
      j["min_segments_normal"] = min_segments_normal_order(c.n, c.rho, target);
      emit(c, j.dump(2) + "\n");
    } else if (validate->parsed()) {
      const SockpInstance inst = load_instance(c);
      const RkpmOptions opts = solver_options(c);
      const BoundResult r = use_exact ? solve_exact(inst, *inst.omega, opts).bound : lower_bound(inst, *inst.omega, m, opts);
      json j = to_json(r);
      j["soc_feasible"] = is_soc_feasible(r.solution, inst, *inst.omega);
      j["soc_lhs"] = soc_lhs(r.solution, inst, *inst.omega);
      j["capacity"] = inst.capacity.to_string();
      j["samples"] = samples;
      j["satisfaction"] = monte_carlo_feasibility(r.solution, inst, samples, mc_seed);
      emit(c, j.dump(2) + "\n");
    } else if (bench->parsed() || compare->parsed()) {
      BenchConfig cfg;
      cfg.families = split_families(families);
      cfg.sizes = split_list<std::int64_t>(sizes);
      cfg.rhos = split_list<double>(rhos);
      cfg.m_grid = split_list<std::int64_t>(compare->parsed() ? cmp_m : m_grid);
      cfg.seeds = seed_list(seeds);
      cfg.ambiguity = bench_ambiguity(c.ambiguity);
      cfg.options = solver_options(c);
      std::ostringstream os;
      if (compare->parsed()) {
        const auto rows = run_scheme_comparison(cfg);
        if (c.format == "csv") write_csv(os, rows); else os << to_json(rows).dump(2) << '\n';
      } else if (kind == "exact") {
        const auto rows = run_exact_bench(cfg);
        if (c.format == "csv") write_csv(os, rows); else os << to_json(rows).dump(2) << '\n';
      } else {
        const auto rows = run_bounds_bench(cfg);
        if (summary) {
          const auto s = summarize(rows);
          if (c.format == "csv") {
            os << "family,n,rho,m,count,mean_gap_pct,mean_time_ms\n";
            for (const auto& r : s) {
              os << r.family << ',' << r.n << ',' << format_double(r.rho, 4) << ',' << r.m << ',' << r.count << ','
                 << format_double(r.mean_gap_pct, 4) << ',' << format_double(r.mean_time_ms, 3) << '\n';
            }
          } else {
            os << to_json(s).dump(2) << '\n';
          }
        } else if (c.format == "csv") {
          write_csv(os, rows);
        } else {
          os << to_json(rows).dump(2) << '\n';
        }
      }
      emit(c, os.str());
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
