// persuade: scenario runner and acceptance suite for the dynamic
// information-design solvers.  Scenario verbs read a JSON config, run the
// experiment, and emit <out>/<scenario>.csv plus a combined summary.txt;
// the exit status is nonzero iff any check failed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "persuade/config.hpp"
#include "persuade/gamma.hpp"
#include "persuade/instance.hpp"
#include "persuade/mcgame.hpp"
#include "persuade/report.hpp"
#include "persuade/rng.hpp"
#include "persuade/solver.hpp"
#include "persuade/sorin.hpp"
#include "persuade/stats.hpp"
#include "persuade/trajectories.hpp"
#include "persuade/verify.hpp"

namespace {

using namespace persuade;

#ifndef PERSUADE_VERSION
#define PERSUADE_VERSION "0.0.0"
#endif

struct CommonFlags {
  std::vector<std::string> configs;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> trials;
  bool parallel = false;
};

struct ScenarioOutcome {
  std::string scenario;
  std::vector<CheckRow> checks;
  std::vector<std::string> provenance;
};

std::string num(double v) { return format_number(v); }

ScenarioConfig load_with_overrides(const std::string& path, const CommonFlags& f) {
  ScenarioConfig cfg = load_config(path);
  if (f.seed) cfg.seed = *f.seed;
  if (f.grid) cfg.grid = *f.grid;
  if (f.trials) cfg.trials = *f.trials;
  return cfg;
}

std::vector<std::string> provenance_of(const ScenarioConfig& cfg) {
  return {"version " PERSUADE_VERSION, "scenario " + cfg.scenario,
          "seed " + std::to_string(cfg.seed), "grid " + std::to_string(cfg.grid),
          "eps_stop " + num(cfg.eps_stop), "trials " + std::to_string(cfg.trials)};
}

double sup_abs_u(const PersuasionInstance& inst, const SimplexGrid& grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(inst.u(grid.point(i))));
  return worst;
}

// --------------------------------------------------------------------------

ScenarioOutcome run_solve(const ScenarioConfig& cfg, const std::string& out_dir) {
  ScenarioOutcome res{cfg.scenario, {}, provenance_of(cfg)};
  const auto inst = cfg.make_instance();
  const auto m = cfg.make_matrix();
  const auto grid = make_grid(inst.states(), cfg.grid);
  const Belief pi = invariant_distribution(m);

  std::vector<std::vector<std::string>> rows;
  std::vector<SolveResult> solved;
  solved.reserve(cfg.deltas.size());
  const GridValueFunction* warm = nullptr;
  double closed_form_err = 0.0;
  for (double d : cfg.deltas) {
    solved.push_back(solve_discounted_value(inst, m, d, grid, cfg.eps_stop, 1000000, warm));
    warm = &solved.back().v;
    const auto& s = solved.back();
    rows.push_back({num(d), num(s.v.interpolate(pi)), std::to_string(s.iterations),
                    num(s.final_gap), num(cfg.eps_stop * (1.0 - d)),
                    std::to_string(cfg.seed)});
    res.checks.push_back({"delta=" + num(d) + " converged", s.final_gap,
                          cfg.eps_stop * (1.0 - d), s.final_gap <= cfg.eps_stop * (1.0 - d), ""});
    if (cfg.instance_id == "appendixA")
      for (std::size_t i = 0; i < grid->size(); ++i)
        closed_form_err = std::max(
            closed_form_err, std::abs(s.v[i] - appendix_a_value(d, grid->point(i)[0])));
  }
  if (cfg.instance_id == "appendixA")
    res.checks.push_back({"closed-form match", closed_form_err, 2e-3, closed_form_err <= 2e-3,
                          "max grid error across deltas"});
  write_csv(out_dir + "/" + cfg.scenario + ".csv",
            {"delta", "value_at_pi", "iterations", "final_gap", "tolerance", "seed"}, rows);
  return res;
}

ScenarioOutcome run_trajectory(const ScenarioConfig& cfg, const std::string& out_dir) {
  ScenarioOutcome res{cfg.scenario, {}, provenance_of(cfg)};
  const auto inst = cfg.make_instance();
  const auto m = cfg.make_matrix();
  const auto grid = make_grid(inst.states(), cfg.grid);
  const auto rep = phi_psi(inst, m, cfg.deltas, grid, cfg.eps_stop);

  res.checks.push_back({"phi non-increasing", rep.max_phi_increase, rep.tolerance,
                        rep.phi_non_increasing(), ""});
  res.checks.push_back({"psi non-decreasing", rep.max_psi_decrease, rep.tolerance,
                        rep.psi_non_decreasing(), ""});
  res.checks.push_back({"phi >= psi", rep.max_bracket_violation, rep.tolerance,
                        rep.max_bracket_violation <= rep.tolerance, ""});
  const auto meet = meet_check(rep);
  res.checks.push_back({"flat after the trajectories meet", meet.max_deviation, rep.tolerance,
                        !meet.triggered || meet.constant_after,
                        meet.triggered ? "met at delta " + num(meet.delta0) : "never met"});
  if (cfg.instance_id == "appendixA") {
    double err = 0.0;
    const Belief pi = invariant_distribution(m);
    for (const auto& p : rep.points)
      err = std::max(err, std::abs(p.phi - appendix_a_value(p.delta, pi[0])));
    res.checks.push_back({"closed-form match at the invariant law", err, 2e-3, err <= 2e-3, ""});
  }

  // Near-one rate diagnostics on the qualifying deltas; a precondition
  // failure is reported as a rejection row, not an error.
  std::vector<double> rate_deltas;
  for (double d : cfg.deltas)
    if (d >= 0.9) rate_deltas.push_back(d);
  std::vector<RatePoint> rate_points;
  if (!m.ergodic()) {
    res.checks.push_back({"rate audit", 0.0, 0.0, true, "rejected: chain not ergodic"});
  } else if (rate_deltas.size() < 2) {
    res.checks.push_back(
        {"rate audit", 0.0, 0.0, true, "rejected: needs at least two deltas >= 0.9"});
  } else {
    const Belief pi = invariant_distribution(m);
    double cstar = 1.0;
    for (std::size_t l = 0; l < pi.size(); ++l) cstar = std::min(cstar, pi[l]);
    if (rate_deltas.front() <= 1.0 - cstar / 2.0) {
      res.checks.push_back({"rate audit", rate_deltas.front(), 1.0 - cstar / 2.0, true,
                            "rejected: deltas not inside the near-one regime"});
    } else {
      const auto rate = rate_check(inst, m, rate_deltas, grid, cfg.eps_stop);
      rate_points = rate.points;
      res.checks.push_back({"rate ratios bounded (max <= 3x median)", rate.max_ratio,
                            3.0 * rate.median_ratio, rate.bounded,
                            "limit bracket width " + num(rate.bracket_width)});
    }
  }

  std::vector<TrajectoryRow> rows;
  for (const auto& p : rep.points) {
    TrajectoryRow row;
    row.delta = p.delta;
    row.phi = p.phi;
    row.psi = p.psi;
    row.tolerance = rep.tolerance;
    if (m.ergodic()) {
      row.bracket_lower = p.psi;
      row.bracket_upper = p.phi;
    }
    for (const auto& rp : rate_points)
      if (std::abs(rp.delta - p.delta) < 1e-12) {
        row.supgap = rp.supgap;
        row.bound_ratio = rp.ratio;
      }
    rows.push_back(row);
  }
  write_trajectory_csv(out_dir + "/" + cfg.scenario + ".csv", rows, cfg.seed);
  return res;
}

ScenarioOutcome run_gamma_exp(const ScenarioConfig& cfg, const std::string& out_dir) {
  ScenarioOutcome res{cfg.scenario, {}, provenance_of(cfg)};
  const auto inst = cfg.make_instance();
  const auto m = cfg.make_matrix();
  const auto grid = make_grid(inst.states(), cfg.grid);
  const Belief pi = invariant_distribution(m);
  const double x = cfg.x;
  const double u_inf = sup_abs_u(inst, *grid);
  std::vector<GammaRow> rows;

  // Long-horizon simulation is linear in N * trials; the documented clamp
  // keeps the default configuration runnable at desk scale.
  const std::size_t sim_trials = std::min<std::size_t>(cfg.trials, 2000);
  res.provenance.push_back("sim_trials " + std::to_string(sim_trials) +
                           " (long-horizon runs clamp trials at 2000)");

  // Geometric-duration block payoff against the discounted value.
  const auto solved = solve_discounted_value(inst, m, 1.0 - x, grid, cfg.eps_stop);
  const SplitPolicy policy(inst, m, 1.0 - x, solved.v);
  const auto rd =
      random_duration_payoff(inst, m, pi, policy, x, cfg.trials, substream_seed(cfg.seed, 1));
  const double block_target = solved.v.interpolate(pi) / x;
  {
    const double err = std::abs(rd.estimate.mean - block_target);
    const double tol = 3.0 * rd.estimate.stderr_;
    res.checks.push_back({"block payoff matches value/x", err, tol, err <= tol, ""});
    GammaRow row;
    row.label = "block-payoff";
    row.x = x;
    row.horizon = 0;
    row.trials = cfg.trials;
    row.mean = rd.estimate.mean;
    row.stderr_ = rd.estimate.stderr_;
    row.bound = tol;
    row.target_value = block_target;
    row.pass = err <= tol;
    row.seed = cfg.seed;
    row.tolerance = tol;
    rows.push_back(row);
  }

  // Erasure-resistant sender against the silent adversary: guarantee floor,
  // tail decomposition, and gap statistics.
  ThetaStarSender theta(inst, m, x, grid, cfg.eps_stop);
  ConstantAdversary quiet(false);
  const auto stats = run_gamma(inst, m, x, theta, quiet, cfg.horizon, sim_trials,
                               substream_seed(cfg.seed, 2), grid);
  const bool prop1_ok = (static_cast<double>(cfg.horizon) - 1.0) * x -
                            std::pow(static_cast<double>(cfg.horizon), 0.75) >=
                        0.0;
  if (prop1_ok) {
    const double deficit = proposition1_bound(x, cfg.horizon, u_inf);
    const double floor_v = solved.v.interpolate(pi) - deficit - 3.0 * stats.cesaro.stderr_;
    res.checks.push_back({"guarantee floor vs silent adversary", stats.cesaro.mean, floor_v,
                          stats.cesaro.mean >= floor_v, "floor = value - bound - 3*stderr"});
    GammaRow row;
    row.label = "guarantee-" + quiet.name();
    row.x = x;
    row.horizon = cfg.horizon;
    row.trials = sim_trials;
    row.mean = stats.cesaro.mean;
    row.stderr_ = stats.cesaro.stderr_;
    row.bound = deficit;
    row.target_value = solved.v.interpolate(pi);
    row.pass = stats.cesaro.mean >= floor_v;
    row.seed = cfg.seed;
    row.tolerance = 3.0 * stats.cesaro.stderr_;
    rows.push_back(row);
  } else {
    res.checks.push_back({"guarantee floor vs silent adversary", 0.0, 0.0, true,
                          "rejected: horizon too short for the deficit bound"});
  }
  res.checks.push_back({"tail block within its bound", stats.mean_B,
                        stats.eq9_bound + 3.0 * stats.stderr_B, stats.eq9_pass, ""});
  const auto chi = chi_square_geometric(stats.kappa_histogram, x, 0.001);
  res.checks.push_back({"erasure gaps geometric (p-value)", chi.p_value, 0.001,
                        chi.pass, std::to_string(chi.samples) + " gaps"});

  // Calibrated eraser: every-sender ceiling plus the combined-coin check.
  if (cfg.y > x) {
    const auto cap_solved = solve_discounted_value(inst, m, 1.0 - cfg.y, grid, cfg.eps_stop);
    const double excess = proposition2_bound(cfg.y, cfg.horizon, u_inf);
    auto senders = sender_panel(inst, m, x, grid, cfg.eps_stop);
    std::uint64_t z_count = 0, z_samples = 0;
    for (std::size_t i = 0; i < senders.size(); ++i) {
      auto tau = tau_y(x, cfg.y);
      const auto ystats = run_gamma(inst, m, x, *senders[i], *tau, cfg.horizon, sim_trials,
                                    substream_seed(cfg.seed, 10 + i), grid);
      const double cap_v =
          cap_solved.v.interpolate(pi) + excess + 3.0 * ystats.cesaro.stderr_;
      res.checks.push_back({"ceiling vs calibrated eraser: " + senders[i]->name(),
                            ystats.cesaro.mean, cap_v, ystats.cesaro.mean <= cap_v,
                            "cap = value + bound + 3*stderr"});
      z_count += ystats.z_count;
      z_samples += ystats.z_samples;
      GammaRow row;
      row.label = "ceiling-" + senders[i]->name();
      row.x = x;
      row.y = cfg.y;
      row.horizon = cfg.horizon;
      row.trials = sim_trials;
      row.mean = ystats.cesaro.mean;
      row.stderr_ = ystats.cesaro.stderr_;
      row.bound = excess;
      row.target_value = cap_solved.v.interpolate(pi);
      row.pass = ystats.cesaro.mean <= cap_v;
      row.seed = cfg.seed;
      row.tolerance = 3.0 * ystats.cesaro.stderr_;
      rows.push_back(row);
    }
    const auto bern = bernoulli_mean_check(z_count, z_samples, cfg.y);
    res.checks.push_back({"combined erasures match the calibrated coin",
                          std::abs(bern.empirical - bern.expected), bern.bound, bern.pass,
                          std::to_string(bern.samples) + " samples"});
  } else {
    res.checks.push_back(
        {"calibrated eraser", 0.0, 0.0, true, "rejected: requires y > x"});
  }

  write_gamma_csv(out_dir + "/" + cfg.scenario + ".csv", rows);
  return res;
}

ScenarioOutcome run_mcgame(const ScenarioConfig& cfg, const std::string& out_dir) {
  ScenarioOutcome res{cfg.scenario, {}, provenance_of(cfg)};
  const auto fam = cfg.make_game();
  const auto m = cfg.make_matrix();
  const auto grid = make_grid(fam.states(), cfg.grid);
  const auto rep = game_trajectories(fam, m, cfg.deltas, grid, cfg.strategy_res, cfg.eps_stop);

  res.checks.push_back({"game value non-increasing at the invariant law", rep.max_phi_increase,
                        rep.tolerance, rep.phi_non_increasing(), ""});
  res.checks.push_back({"weighted vertex values non-decreasing", rep.max_psi_decrease,
                        rep.tolerance, rep.psi_non_decreasing(), ""});
  res.checks.push_back({"limit bracket ordered", rep.bracket_lower,
                        rep.bracket_upper + rep.tolerance,
                        rep.bracket_lower <= rep.bracket_upper + rep.tolerance,
                        "bracket [" + num(rep.bracket_lower) + ", " + num(rep.bracket_upper) +
                            "]"});

  std::vector<TrajectoryRow> rows;
  for (const auto& p : rep.points) {
    TrajectoryRow row;
    row.model = "mcgame";
    row.delta = p.delta;
    row.phi = p.phi;
    row.psi = p.psi;
    row.bracket_lower = p.psi;
    row.bracket_upper = p.phi;
    row.tolerance = rep.tolerance;
    rows.push_back(row);
  }
  write_trajectory_csv(out_dir + "/" + cfg.scenario + ".csv", rows, cfg.seed);
  return res;
}

ScenarioOutcome run_sorin(const ScenarioConfig& cfg, const std::string& out_dir) {
  ScenarioOutcome res{cfg.scenario, {}, provenance_of(cfg)};
  const std::size_t sequences = std::min<std::size_t>(cfg.trials, 1000);
  if (sequences < cfg.trials)
    res.provenance.push_back("sequences clamped to 1000 for the identity audit");
  const std::vector<std::pair<double, double>> pairs{{0.05, 0.1}, {0.1, 0.5}, {0.3, 1.0}};
  const std::size_t length = 1200, truncation = 600;

  std::vector<std::vector<std::string>> rows;
  SplitMix64 rng(substream_seed(cfg.seed, 1));
  for (const auto& [mu, lambda] : pairs) {
    double worst_res = 0.0, worst_slack = 0.0;
    std::size_t fails = 0;
    SplitMix64 seq_rng(rng.next());
    for (std::size_t s = 0; s < sequences; ++s) {
      std::vector<double> a(length);
      for (auto& v : a) v = 2.0 * seq_rng.uniform01() - 1.0;
      const auto chk = sorin_identity_check(a, mu, lambda, truncation, 1.0);
      worst_res = std::max(worst_res, chk.residual);
      worst_slack = std::max(worst_slack, chk.slack);
      if (!chk.pass) ++fails;
    }
    res.checks.push_back({"decomposition residual, mu=" + num(mu) + " lambda=" + num(lambda),
                          worst_res, 1e-9, fails == 0,
                          std::to_string(sequences) + " sequences"});
    rows.push_back({num(mu), num(lambda), std::to_string(sequences), num(worst_res),
                    num(worst_slack), fails == 0 ? "1" : "0", num(1e-9),
                    std::to_string(cfg.seed)});
  }
  write_csv(out_dir + "/" + cfg.scenario + ".csv",
            {"mu", "lambda", "sequences", "worst_residual", "worst_slack", "pass", "tolerance",
             "seed"},
            rows);
  return res;
}

ScenarioOutcome run_one(const std::string& verb, const std::string& path,
                        const CommonFlags& flags) {
  ScenarioConfig cfg = load_with_overrides(path, flags);
  if (cfg.experiment != verb)
    throw std::runtime_error("config " + path + " declares experiment \"" + cfg.experiment +
                             "\" but the \"" + verb + "\" verb was invoked");
  if (verb == "solve") return run_solve(cfg, flags.out);
  if (verb == "trajectory") return run_trajectory(cfg, flags.out);
  if (verb == "gamma") return run_gamma_exp(cfg, flags.out);
  if (verb == "mcgame") return run_mcgame(cfg, flags.out);
  return run_sorin(cfg, flags.out);
}

int run_scenarios(const std::string& verb, const CommonFlags& flags) {
  std::filesystem::create_directories(flags.out);
  std::vector<ScenarioOutcome> outcomes(flags.configs.size());
  auto job = [&](std::size_t i) {
    try {
      outcomes[i] = run_one(verb, flags.configs[i], flags);
    } catch (const std::exception& e) {
      outcomes[i].scenario = flags.configs[i];
      outcomes[i].checks.push_back({"scenario error", 0.0, 0.0, false, e.what()});
    }
  };
  if (flags.parallel && flags.configs.size() > 1) {
    std::vector<std::future<void>> futures;
    for (std::size_t i = 0; i < flags.configs.size(); ++i)
      futures.push_back(std::async(std::launch::async, job, i));
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < flags.configs.size(); ++i) job(i);
  }

  std::vector<std::string> provenance;
  std::vector<CheckRow> all;
  for (const auto& o : outcomes) {
    for (const auto& line : o.provenance) provenance.push_back(o.scenario + ": " + line);
    for (auto row : o.checks) {
      row.name = o.scenario + ": " + row.name;
      all.push_back(std::move(row));
    }
  }
  const bool ok = write_summary(flags.out + "/summary.txt", "persuade " + verb + " report",
                                provenance, all);
  for (const auto& row : all)
    std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << row.name
              << "  measured=" << num(row.measured) << "  bound=" << num(row.bound)
              << (row.note.empty() ? "" : "  (" + row.note + ")") << "\n";
  std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "; artifacts in "
            << flags.out << "\n";
  return ok ? 0 : 1;
}

int run_verify_all(const CommonFlags& flags) {
  std::filesystem::create_directories(flags.out);
  AcceptanceOptions opt;
  if (flags.seed) opt.seed = *flags.seed;
  const auto results = run_acceptance(opt);

  std::vector<CheckRow> rows;
  std::vector<std::vector<std::string>> csv;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && (r.pass || r.expected_fail);
    rows.push_back({r.id + (r.expected_fail ? " (known limitation)" : ""), r.seconds, 0.0,
                    r.pass, r.title});
    csv.push_back({r.id, r.pass ? "1" : "0", r.expected_fail ? "1" : "0", num(r.seconds)});
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " — " << r.title << " ("
              << num(r.seconds) << "s)\n";
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
  }
  write_csv(flags.out + "/acceptance.csv", {"criterion", "pass", "known_limitation", "seconds"},
            csv);
  write_summary(flags.out + "/summary.txt", "persuade acceptance report",
                {"version " PERSUADE_VERSION, "seed " + std::to_string(opt.seed)}, rows);
  // Honest accounting: the documented known-limitation row still fails the
  // run; the exit status reflects every red row.
  const bool all_green = std::all_of(results.begin(), results.end(),
                                     [](const CriterionResult& r) { return r.pass; });
  std::cout << (all_green ? "all criteria passed"
                          : (ok ? "failures limited to the documented known limitation"
                                : "CRITERION FAILURES PRESENT"))
            << "; artifacts in " << flags.out << "\n";
  return all_green ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic information-design solver and verification suite"};
  app.require_subcommand(1);

  std::vector<std::string> verbs{"solve", "trajectory", "gamma", "mcgame", "sorin"};
  std::vector<std::pair<CLI::App*, CommonFlags>> subs;
  subs.reserve(verbs.size() + 1);
  for (const auto& verb : verbs) {
    auto* sub = app.add_subcommand(verb, "run " + verb + " scenarios");
    subs.emplace_back(sub, CommonFlags{});
    auto& flags = subs.back().second;
    sub->add_option("--config", flags.configs, "scenario config file (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--seed", flags.seed, "override the config seed");
    sub->add_option("--grid", flags.grid, "override the config grid resolution");
    sub->add_option("--trials", flags.trials, "override the config trial count");
    sub->add_flag("--parallel", flags.parallel, "run scenarios concurrently");
  }
  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  subs.emplace_back(verify, CommonFlags{});
  auto& vflags = subs.back().second;
  verify->add_option("--out", vflags.out, "output directory");
  verify->add_option("--seed", vflags.seed, "override the suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < verbs.size(); ++i)
      if (subs[i].first->parsed()) return run_scenarios(verbs[i], subs[i].second);
    return run_verify_all(subs.back().second);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
