#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "poissonlab/besov.hpp"
#include "poissonlab/bounds.hpp"
#include "poissonlab/counterexample.hpp"
#include "poissonlab/densities.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/estimators.hpp"
#include "poissonlab/experiments.hpp"
#include "poissonlab/gridfn.hpp"
#include "poissonlab/losses.hpp"
#include "poissonlab/mc.hpp"

#ifndef POISSONLAB_VERSION
#define POISSONLAB_VERSION "unknown"
#endif

namespace poissonlab::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shortest round-trip representation, so output is stable across runs.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string num(std::int64_t x) { return std::to_string(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) body_ << ',';
      body_ << cells[i];
    }
    body_ << '\n';
  }

  std::string str() const { return body_.str(); }

 private:
  std::size_t width_;
  std::ostringstream body_;
};

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
  unsigned threads = 0;

  McOptions mc() const { return McOptions{threads}; }
};

void add_common(CLI::App* cmd, Common& c, bool seeded) {
  if (seeded) {
    cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  }
  cmd->add_option("--out", c.out, "Output CSV path, - for stdout")->capture_default_str();
}

json flags_of(const CLI::App& cmd) {
  json flags = json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    std::string name = opt->get_single_name();
    if (name == "help" || name == "out") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      flags[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    }
  }
  return flags;
}

void emit(const std::string& command, const CLI::App& cmd, const Common& c, const std::string& body,
          std::chrono::steady_clock::time_point start, std::ostream& out) {
  const double duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"command", command},
                   {"flags", flags_of(cmd)},
                   {"seed", c.seed},
                   {"version", POISSONLAB_VERSION},
                   {"duration_s", duration}};
  const std::string text = "# " + manifest.dump() + "\n" + body;
  if (c.out == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file: " + c.out);
  file << text;
  if (!file) throw std::runtime_error("write failed: " + c.out);
}

template <class T>
void require_positive(const std::vector<T>& values, const std::string& name) {
  for (const T& v : values) {
    if (!(v > T{0})) throw UsageError(name + " values must be positive");
  }
}

Density load_density(const std::string& spec, std::size_t resolution) {
  const auto& names = builtin_density_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return builtin_density(spec, resolution);
  if (std::filesystem::is_regular_file(spec)) return Density(load_grid_function(spec));
  throw UsageError("unknown density: " + spec);
}

GridFunction load_function(const std::string& spec, std::size_t resolution) {
  const auto& names = builtin_density_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) {
    return builtin_density(spec, resolution).function();
  }
  if (std::filesystem::is_regular_file(spec)) return load_grid_function(spec);
  throw UsageError("unknown function: " + spec);
}

// ---- counterexample

struct CounterexampleArgs {
  std::vector<std::int64_t> n;
  double beta = 0.6;
  std::int64_t reps = 10000;
};

int counterexample(const CounterexampleArgs& a, const Common& c, std::string& body) {
  if (a.n.empty()) throw UsageError("--n is required");
  for (auto n : a.n) {
    if (n < 100) throw UsageError("--n values must be >= 100");
  }
  if (!(a.beta > 0.5 && a.beta < 1.0)) throw UsageError("--beta must lie in (0.5, 1)");
  if (a.reps < 0) throw UsageError("--reps must be >= 0");

  const auto [limit_iid, limit_poisson] = asymptotic_limits();
  Csv csv({"n", "model", "z", "m", "P_K_lt_m", "P_K_lt_m_kind", "bayes_risk", "bayes_stderr", "limit",
           "gap_lemma1"});
  for (auto n : a.n) {
    for (Model model : {Model::iid, Model::poisson}) {
      auto cfg = CounterexampleConfig::make(n, a.beta, a.reps, c.seed);
      const bool exact = shortfall_probability_exact(model, n, cfg.zero_cells, cfg.target).has_value();
      if (exact) cfg.reps = 0;
      if (!exact && cfg.reps == 0) throw UsageError("iid case at n = " + num(n) + " needs --reps > 0");
      const auto r = lemma1(model, cfg, c.mc());
      csv.row({num(n), std::string(to_string(model)), num(cfg.zero_cells), num(cfg.target), num(r.shortfall.mean),
               exact ? "exact" : "mc", num(r.risk.mean), num(r.risk.std_error),
               num(model == Model::iid ? limit_iid : limit_poisson), num(r.gap.mean)});
    }
  }
  body = csv.str();
  return kExitOk;
}

// ---- estimator-risk

struct EstimatorRiskArgs {
  std::vector<std::string> density{"uniform"};
  std::vector<std::int64_t> n;
  std::string metric = "ln";
  std::string model = "poisson";
  std::string estimator = "threshold";
  std::int64_t reps = 200;
  std::size_t resolution = 4096;
};

int estimator_risk(const EstimatorRiskArgs& a, const Common& c, std::string& body) {
  if (a.n.empty()) throw UsageError("--n is required");
  for (auto n : a.n) {
    if (n < 8) throw UsageError("--n values must be >= 8");
  }
  if (a.reps < 1) throw UsageError("--reps must be >= 1");
  if (a.resolution < 1) throw UsageError("--resolution must be >= 1");
  if (a.estimator != "threshold" && a.estimator != "raw" && a.estimator != "oracle") {
    throw UsageError("unknown estimator: " + a.estimator);
  }
  Metric metric;
  Model model;
  try {
    metric = parse_metric(a.metric);
    model = parse_model(a.model);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Csv csv({"density", "model", "n", "k_n", "c_n", "metric", "risk", "stderr", "reps"});
  for (const auto& spec : a.density) {
    const Density f = load_density(spec, a.resolution);
    const CellSampler sampler(f.function());
    for (auto n : a.n) {
      const auto cfg = EstimatorConfig::for_sample_size(n);
      const double nd = static_cast<double>(n);
      auto task = [&](Rng& rng, std::int64_t) {
        if (a.estimator == "oracle") return evaluate_metric(metric, f, f, nd);
        const std::vector<double> points = model == Model::poisson
                                               ? sample_poisson_process(sampler, nd, rng).points
                                               : sample_iid(sampler, n, rng).points;
        const GridFunction est = a.estimator == "threshold"
                                     ? thresholded_estimate(points, cfg)
                                     : raw_histogram(bin_counts(points, cfg.bins), nd);
        return evaluate_metric(metric, f, est, nd);
      };
      const McResult r = run_mc(task, a.reps, c.seed, c.mc());
      csv.row({spec, a.model, num(n), num(cfg.bins), num(cfg.threshold), a.metric, num(r.mean), num(r.std_error),
               num(a.reps)});
    }
  }
  body = csv.str();
  return kExitOk;
}

// ---- besov

struct BesovArgs {
  std::string density = "uniform";
  std::size_t resolution = 4096;
  double alpha = 0.5;
  double p = 1.0;
  double q = 1.0;
  double m_ball = 1.0;
  std::vector<std::size_t> k;
};

int besov(const BesovArgs& a, const Common&, std::string& body) {
  const GridFunction f = load_function(a.density, a.resolution);
  if (!f.is_dyadic()) throw UsageError("input resolution " + num(f.resolution()) + " is not a power of two");
  BesovParams params = [&] {
    try {
      return BesovParams(a.alpha, a.p, a.q, a.m_ball);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  std::vector<std::size_t> ks = a.k;
  if (ks.empty()) {
    for (std::size_t k = 2; k <= f.resolution(); k *= 2) ks.push_back(k);
  }
  for (auto k : ks) {
    if (k < 2 || !is_power_of_two(k) || k > f.resolution()) {
      throw UsageError("--k values must be dyadic, >= 2 and <= the input resolution");
    }
  }

  const double norm = besov_norm(f, params);
  const BesovParams at_norm(a.alpha, a.p, a.q, norm);
  bool all_hold = true;
  Csv csv({"quantity", "k", "value", "bound", "holds"});
  csv.row({"besov_norm", "", num(norm), "", ""});
  csv.row({"in_ball", "", flag(norm <= a.m_ball), num(a.m_ball), ""});
  for (auto k : ks) {
    const double err = approximation_lp_error(f, k, a.p);
    const double rhs = approximation_bound_rhs(at_norm, k, a.p);
    const bool lp_ok = BoundReport::compare(err, rhs, std::numeric_limits<double>::infinity()).holds;
    const double t = 1.0 / std::sqrt(std::log(static_cast<double>(k)));
    const double ex = exceedance_measure(f, k, t);
    const double c15 = condition15_rhs(at_norm, k);
    const bool ex_ok = BoundReport::compare(ex, c15, std::numeric_limits<double>::infinity()).holds;
    all_hold = all_hold && lp_ok && ex_ok;
    csv.row({"lp_error", num(k), num(err), num(rhs), flag(lp_ok)});
    csv.row({"exceedance", num(k), num(ex), num(c15), flag(ex_ok)});
  }
  body = csv.str();
  return all_hold ? kExitOk : kExitViolation;
}

// ---- bounds

struct BoundsArgs {
  std::vector<std::string> check;
  std::vector<double> n;
  std::vector<double> D;
  std::vector<double> m;
  std::vector<double> r;
  std::vector<double> beta_n;
  std::vector<double> c;
  std::int64_t pairs = 100;
  std::size_t resolution = 64;
};

const std::vector<std::string> kChecks{"eq1", "pair", "superposition", "lemma2", "lemma3"};

std::vector<double> or_default(const std::vector<double>& given, std::vector<double> fallback) {
  return given.empty() ? fallback : given;
}

int bounds(const BoundsArgs& a, const Common& c, std::string& body) {
  std::vector<std::string> checks = a.check.empty() ? kChecks : a.check;
  for (const auto& name : checks) {
    if (std::find(kChecks.begin(), kChecks.end(), name) == kChecks.end()) {
      throw UsageError("unknown check: " + name);
    }
  }
  require_positive(a.n, "--n");
  require_positive(a.D, "--D");
  require_positive(a.m, "--m");
  require_positive(a.beta_n, "--beta-n");
  require_positive(a.c, "--c");
  for (double r : a.r) {
    if (!(r >= 0.0)) throw UsageError("--r values must be >= 0");
  }
  if (a.pairs < 1) throw UsageError("--pairs must be >= 1");
  if (a.resolution < 1) throw UsageError("--resolution must be >= 1");

  bool all_hold = true;
  Csv csv({"check", "params", "lhs", "rhs", "holds", "vacuous", "margin"});
  auto add = [&](const std::string& check, const std::string& params, const BoundReport& rep) {
    all_hold = all_hold && rep.holds;
    csv.row({check, params, num(rep.lhs), num(rep.rhs), flag(rep.holds), flag(rep.vacuous), num(rep.margin)});
  };
  // Bound calculators with no exact left-hand side to compare against.
  auto add_rhs = [&](const std::string& check, const std::string& params, double rhs, double trivial) {
    csv.row({check, params, "", num(rhs), "true", flag(rhs >= trivial), ""});
  };

  for (const auto& name : checks) {
    if (name == "eq1") {
      for (double r : or_default(a.r, {0.0, 1.0, 10.0})) {
        for (double b : or_default(a.beta_n, {1e-3, 1e-2})) {
          add_rhs(name, "r=" + num(r) + ";beta_n=" + num(b), lecam_additional_obs_bound(r, b), 2.0);
        }
      }
    } else if (name == "pair") {
      for (double n : or_default(a.n, {1e2, 1e4})) {
        for (double m : or_default(a.m, {1.0, 10.0, 100.0})) {
          add_rhs(name, "n=" + num(n) + ";m=" + num(m), poisson_pair_bound(n, m), 2.0);
        }
      }
    } else if (name == "superposition") {
      const auto ns = or_default(a.n, {1e2, 1e4});
      const auto Ds = or_default(a.D, {1.0, 3.0});
      for (std::int64_t i = 0; i < a.pairs; ++i) {
        Rng rng(c.seed, static_cast<std::uint64_t>(i));
        const Density f = random_density(rng, a.resolution);
        const Density f0 = random_density(rng, a.resolution);
        for (double n : ns) {
          for (double D : Ds) {
            const double m = std::ceil(D * std::sqrt(n));
            const std::string params = "pair=" + num(i) + ";n=" + num(n) + ";D=" + num(D) + ";m=" + num(m);
            const BoundReport rep = superposition_check(f, f0, n, m);
            add(name, params, rep);
            if (D > 1.0) {
              add("superposition-relaxed", params,
                  BoundReport::compare(rep.rhs, superposition_relaxed_rhs(f, f0, n, D),
                                       std::numeric_limits<double>::infinity()));
            }
          }
        }
      }
    } else if (name == "lemma2") {
      for (double n : or_default(a.n, {1e2, 1e3, 1e4})) {
        if (n != std::floor(n)) throw UsageError("lemma2 needs integer --n values");
        for (double D : or_default(a.D, {1.0, 2.0, 5.0, 10.0})) {
          add(name, "n=" + num(n) + ";D=" + num(D), lemma2_tail_check(static_cast<std::int64_t>(n), D));
        }
      }
    } else if (name == "lemma3") {
      for (double D : or_default(a.D, {2.0, 5.0, 10.0})) {
        if (D <= 1.0) continue;
        for (double cn : or_default(a.c, {0.1, 0.3})) {
          add_rhs(name, "D=" + num(D) + ";c_n=" + num(cn), lemma3_neighborhood_bound(D, cn),
                  std::numeric_limits<double>::infinity());
        }
      }
    }
  }
  body = csv.str();
  return all_hold ? kExitOk : kExitViolation;
}

// ---- tail

struct TailArgs {
  std::vector<double> lambda{1.0, 10.0, 100.0, 1000.0, 10000.0};
  std::vector<double> m0;
};

int tail(const TailArgs& a, const Common&, std::string& body, std::ostream& err) {
  require_positive(a.lambda, "--lambda");
  require_positive(a.m0, "--m0");
  bool one_sided_hold = true;
  std::int64_t two_sided_violations = 0;
  Csv csv({"lambda", "m0", "side", "lhs", "rhs", "holds", "vacuous", "margin"});
  for (double lambda : a.lambda) {
    std::vector<double> grid = a.m0;
    if (grid.empty()) {
      const auto top = static_cast<std::int64_t>(std::ceil(10.0 * std::sqrt(lambda)));
      for (std::int64_t m0 = 1; m0 <= top; ++m0) grid.push_back(static_cast<double>(m0));
    }
    for (double m0 : grid) {
      for (TailSide side : {TailSide::upper, TailSide::lower, TailSide::two_sided}) {
        const BoundReport rep = poisson_tail_check(lambda, m0, side);
        if (side == TailSide::two_sided) {
          if (!rep.holds) ++two_sided_violations;
        } else {
          one_sided_hold = one_sided_hold && rep.holds;
        }
        csv.row({num(lambda), num(m0), std::string(to_string(side)), num(rep.lhs), num(rep.rhs), flag(rep.holds),
                 flag(rep.vacuous), num(rep.margin)});
      }
    }
  }
  if (two_sided_violations > 0) {
    err << "note: two-sided form exceeded its stated bound at " << two_sided_violations << " grid points\n";
  }
  body = csv.str();
  return one_sided_hold ? kExitOk : kExitViolation;
}

}  // namespace

std::string csv_body(const std::string& document) {
  if (document.empty() || document.front() != '#') return document;
  const auto nl = document.find('\n');
  return nl == std::string::npos ? std::string{} : document.substr(nl + 1);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poissonization and density estimation experiments", "poissonlab"};
  app.set_version_flag("--version", std::string(POISSONLAB_VERSION));
  app.require_subcommand(1);

  Common common;
  std::function<int(std::string&)> action;
  std::string command;

  CounterexampleArgs ce;
  auto* ce_cmd = app.add_subcommand("counterexample", "Occupancy shortfall and Bayes risk on F_{beta,n}");
  ce_cmd->add_option("--n", ce.n, "Number of cells (list)")->delimiter(',')->required();
  ce_cmd->add_option("--beta", ce.beta, "Zero-set exponent in (1/2, 1)")->capture_default_str();
  ce_cmd->add_option("--reps", ce.reps, "Replications when no exact value exists")->capture_default_str();
  add_common(ce_cmd, common, true);
  ce_cmd->callback([&] {
    command = "counterexample";
    action = [&](std::string& body) { return counterexample(ce, common, body); };
  });

  EstimatorRiskArgs er;
  auto* er_cmd = app.add_subcommand("estimator-risk", "Monte Carlo risk of the thresholded histogram");
  er_cmd->add_option("--density", er.density, "Built-in name or GridFunction file (list)")
      ->delimiter(',')
      ->capture_default_str();
  er_cmd->add_option("--n", er.n, "Sample sizes (list)")->delimiter(',')->required();
  er_cmd->add_option("--metric", er.metric, "ln|hellinger2|scaled-hellinger2|l2|sup")->capture_default_str();
  er_cmd->add_option("--model", er.model, "iid|poisson")->capture_default_str();
  er_cmd->add_option("--estimator", er.estimator, "threshold|raw|oracle")->capture_default_str();
  er_cmd->add_option("--reps", er.reps, "Replications")->capture_default_str();
  er_cmd->add_option("--resolution", er.resolution, "Resolution of built-in densities")->capture_default_str();
  add_common(er_cmd, common, true);
  er_cmd->callback([&] {
    command = "estimator-risk";
    action = [&](std::string& body) { return estimator_risk(er, common, body); };
  });

  BesovArgs bv;
  auto* bv_cmd = app.add_subcommand("besov", "Besov norm and approximation bounds");
  bv_cmd->add_option("--density", bv.density, "Built-in name or GridFunction file")->capture_default_str();
  bv_cmd->add_option("--resolution", bv.resolution, "Resolution of built-in functions")->capture_default_str();
  bv_cmd->add_option("--alpha", bv.alpha, "Smoothness")->capture_default_str();
  bv_cmd->add_option("--p", bv.p, "Integrability exponent")->capture_default_str();
  bv_cmd->add_option("--q", bv.q, "Summability exponent")->capture_default_str();
  bv_cmd->add_option("--m-ball", bv.m_ball, "Ball radius")->capture_default_str();
  bv_cmd->add_option("--k", bv.k, "Approximation resolutions (list, default all dyadic)")->delimiter(',');
  add_common(bv_cmd, common, false);
  bv_cmd->callback([&] {
    command = "besov";
    action = [&](std::string& body) { return besov(bv, common, body); };
  });

  BoundsArgs bd;
  auto* bd_cmd = app.add_subcommand("bounds", "Evaluate deficiency and tail bounds on grids");
  bd_cmd->add_option("--check", bd.check, "eq1|pair|superposition|lemma2|lemma3 (list, default all)")
      ->delimiter(',');
  bd_cmd->add_option("--n", bd.n, "Sample sizes (list)")->delimiter(',');
  bd_cmd->add_option("--D", bd.D, "Neighborhood multipliers (list)")->delimiter(',');
  bd_cmd->add_option("--m", bd.m, "Extra observations (list)")->delimiter(',');
  bd_cmd->add_option("--r", bd.r, "Le Cam multiplier r (list)")->delimiter(',');
  bd_cmd->add_option("--beta-n", bd.beta_n, "Le Cam sequence beta_n (list)")->delimiter(',');
  bd_cmd->add_option("--c", bd.c, "Neighborhood radius c_n (list)")->delimiter(',');
  bd_cmd->add_option("--pairs", bd.pairs, "Random density pairs for superposition")->capture_default_str();
  bd_cmd->add_option("--resolution", bd.resolution, "Resolution of random densities")->capture_default_str();
  add_common(bd_cmd, common, true);
  bd_cmd->callback([&] {
    command = "bounds";
    action = [&](std::string& body) { return bounds(bd, common, body); };
  });

  TailArgs tl;
  auto* tl_cmd = app.add_subcommand("tail", "Exact Poisson tails against exp(-m0^3/(m0+lambda)^2)");
  tl_cmd->add_option("--lambda", tl.lambda, "Poisson means (list)")->delimiter(',')->capture_default_str();
  tl_cmd->add_option("--m0", tl.m0, "Deviations (list, default 1..ceil(10 sqrt lambda))")->delimiter(',');
  add_common(tl_cmd, common, false);
  tl_cmd->callback([&] {
    command = "tail";
    action = [&](std::string& body) { return tail(tl, common, body, err); };
  });

  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  try {
    std::string body;
    const int code = action(body);
    emit(command, *cmd, common, body, start, out);
    return code;
  } catch (const McTaskError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace poissonlab::cli
