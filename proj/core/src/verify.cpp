#include "persuade/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "persuade/gamma.hpp"
#include "persuade/instance.hpp"
#include "persuade/mcgame.hpp"
#include "persuade/report.hpp"
#include "persuade/rng.hpp"
#include "persuade/solver.hpp"
#include "persuade/sorin.hpp"
#include "persuade/stats.hpp"
#include "persuade/trajectories.hpp"

namespace persuade {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return format_number(v); }

void note(CriterionResult& r, const std::string& line) { r.details.push_back(line); }

void check(CriterionResult& r, bool ok, const std::string& line) {
  r.details.push_back(std::string(ok ? "[ok] " : "[violation] ") + line);
  if (!ok) r.pass = false;
}

CriterionResult begin(const char* id, const char* title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  r.pass = true;
  return r;
}

double sup_abs_u(const PersuasionInstance& inst, const SimplexGrid& grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(inst.u(grid.point(i))));
  return worst;
}

std::vector<double> nine_deltas() {
  std::vector<double> d;
  for (int i = 1; i <= 9; ++i) d.push_back(i / 10.0);
  return d;
}

// ---------------------------------------------------------------------------
// Seeded random panel: ergodic chains with comfortably interior invariant
// laws (smallest entry > 0.21, so the near-one regime delta > 1 - c*/2
// already contains 0.9), paired with random three-action payoff tables.

struct PanelEntry {
  std::string label;
  PersuasionInstance inst;
  StochasticMatrix m;
  GridPtr grid;
};

PersuasionInstance random_instance(SplitMix64& rng, std::size_t k, const std::string& name) {
  const std::size_t actions = 3;
  ActionTables t;
  t.sender.assign(k, std::vector<double>(actions));
  t.receiver.assign(k, std::vector<double>(actions));
  for (auto& row : t.sender)
    for (auto& e : row) e = rng.uniform01();
  for (auto& row : t.receiver)
    for (auto& e : row) e = rng.uniform01();
  return PersuasionInstance::from_tables(name, std::move(t));
}

StochasticMatrix random_balanced_chain(SplitMix64& rng, std::size_t k) {
  for (;;) {
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (auto& row : rows) {
      double sum = 0.0;
      for (auto& e : row) {
        e = 0.05 + rng.uniform01();
        sum += e;
      }
      for (auto& e : row) e /= sum;
    }
    StochasticMatrix m(std::move(rows));
    const Belief pi = invariant_distribution(m);
    double cstar = 1.0;
    for (std::size_t l = 0; l < k; ++l) cstar = std::min(cstar, pi[l]);
    if (m.ergodic() && cstar > 0.21) return m;
  }
}

std::vector<PanelEntry> ergodic_panel(const AcceptanceOptions& opt) {
  std::vector<PanelEntry> panel;
  GridPtr g2 = make_grid(2, 2000);
  GridPtr g3 = make_grid(3, opt.panel_grid3);
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t k = i < 10 ? 2 : 3;
    SplitMix64 rng(substream_seed(opt.seed, 1000 + i));
    std::string label = (k == 2 ? "panel2-" : "panel3-") + std::to_string(i % 10);
    PersuasionInstance inst = random_instance(rng, k, label);
    StochasticMatrix m = random_balanced_chain(rng, k);
    panel.push_back(PanelEntry{std::move(label), std::move(inst), std::move(m),
                               k == 2 ? g2 : g3});
  }
  return panel;
}

// ---------------------------------------------------------------------------

CriterionResult closed_form_value(const AcceptanceOptions&) {
  auto r = begin("closed-form-value", "solver matches the known closed-form value surface");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  const std::vector<double> deltas{0.0, 0.25, 0.5, 0.75, 0.9};
  std::vector<SolveResult> solved;
  solved.reserve(deltas.size());
  const GridValueFunction* warm = nullptr;
  for (double d : deltas) {
    solved.push_back(solve_discounted_value(inst, m, d, grid, 1e-6, 1000000, warm));
    warm = &solved.back().v;
    double err = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i)
      err = std::max(err,
                     std::abs(solved.back().v[i] - appendix_a_value(d, grid->point(i)[0])));
    check(r, err <= 2e-3, "delta=" + num(d) + ": max grid error " + num(err) + " (allowed 0.002)");
  }
  r.seconds = seconds_since(t0);
  check(r, r.seconds <= 60.0, "runtime " + num(r.seconds) + " s (allowed 60 s)");
  return r;
}

CriterionResult constant_phi(const AcceptanceOptions&) {
  auto r = begin("constant-phi", "value at the invariant law is flat across discounts");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  const Belief pi = invariant_distribution(m);
  const std::vector<double> deltas{0.0, 0.25, 0.5, 0.75, 0.9};
  std::vector<SolveResult> solved;
  solved.reserve(deltas.size());
  const GridValueFunction* warm = nullptr;
  for (double d : deltas) {
    solved.push_back(solve_discounted_value(inst, m, d, grid, 1e-6, 1000000, warm));
    warm = &solved.back().v;
    const double phi = solved.back().v.interpolate(pi);
    check(r, std::abs(phi - 0.5125) <= 2e-3,
          "delta=" + num(d) + ": phi=" + num(phi) + " (target 0.5125 +/- 0.002)");
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult increasing_psi(const AcceptanceOptions&) {
  auto r = begin("increasing-psi", "vertex-averaged value strictly increases with the discount");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  const auto rep = phi_psi(inst, m, {0.0, 0.25, 0.5, 0.75, 0.9}, grid, 1e-6);
  check(r, std::abs(rep.points.front().psi - 0.125) <= 1e-3,
        "psi(0)=" + num(rep.points.front().psi) + " (target 0.125 +/- 0.001)");
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    const double step = rep.points[i + 1].psi - rep.points[i].psi;
    check(r, step > rep.tolerance,
          "psi(" + num(rep.points[i + 1].delta) + ") - psi(" + num(rep.points[i].delta) +
              ") = " + num(step) + " exceeds tolerance " + num(rep.tolerance));
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult periodic_trajectories(const AcceptanceOptions&) {
  auto r = begin("periodic-trajectories",
                 "period-2 chain: flat value at the invariant law, zero at the vertices");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("periodic");
  const auto m = periodic_matrix();
  const auto grid = make_grid(2, 2000);
  const auto rep = phi_psi(inst, m, nine_deltas(), grid, 1e-6);
  double worst_phi = 0.0, worst_psi = 0.0;
  for (const auto& p : rep.points) {
    worst_phi = std::max(worst_phi, std::abs(p.phi - 0.25));
    worst_psi = std::max(worst_psi, std::abs(p.psi));
  }
  check(r, worst_phi <= 1e-3, "max |phi - 0.25| = " + num(worst_phi) + " (allowed 0.001)");
  check(r, worst_psi <= 1e-9, "max |psi| = " + num(worst_psi) + " (allowed 1e-9)");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult monotone_phi_panel(const AcceptanceOptions& opt) {
  auto r = begin("monotone-phi-panel", "random ergodic panel: invariant-law value non-increasing");
  const auto t0 = Clock::now();
  std::size_t violations = 0;
  for (const auto& e : ergodic_panel(opt)) {
    const auto rep = phi_psi(e.inst, e.m, nine_deltas(), e.grid, 1e-6);
    const double allow = 2.0 * rep.tolerance;
    double worst = 0.0;
    std::size_t mine = 0;
    for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
      const double inc = rep.points[i + 1].phi - rep.points[i].phi;
      worst = std::max(worst, inc);
      if (inc > allow) ++mine;
    }
    violations += mine;
    note(r, e.label + ": worst phi increase " + num(worst) + " (allowance " + num(allow) + ")" +
                (mine ? "  VIOLATION" : ""));
  }
  check(r, violations == 0, "panel violations: " + std::to_string(violations));
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult monotone_psi_panel(const AcceptanceOptions& opt) {
  auto r = begin("monotone-psi-panel",
                 "random ergodic panel: weighted vertex values non-decreasing, "
                 "plus one interior weighted family per instance");
  const auto t0 = Clock::now();
  std::size_t violations = 0;
  const auto deltas = nine_deltas();
  for (const auto& e : ergodic_panel(opt)) {
    const auto rep = phi_psi(e.inst, e.m, deltas, e.grid, 1e-6);
    violations += rep.psi_violations;

    const auto family = shrunken_vertex_family(e.m);
    const std::string fam_err = validate_family(family, e.m);
    if (!fam_err.empty()) {
      check(r, false, e.label + ": weighted family invalid: " + fam_err);
      continue;
    }
    const auto wt = weighted_trajectory(e.inst, e.m, deltas, family, e.grid, 1e-6);
    double worst_drop = 0.0;
    std::size_t fam_viol = 0;
    for (std::size_t i = 0; i + 1 < wt.size(); ++i) {
      const double drop = wt[i] - wt[i + 1];
      worst_drop = std::max(worst_drop, drop);
      if (drop > rep.tolerance) ++fam_viol;
    }
    violations += fam_viol;
    note(r, e.label + ": psi drops " + std::to_string(rep.psi_violations) +
                ", family drops " + std::to_string(fam_viol) + " (worst " + num(worst_drop) +
                ", tolerance " + num(rep.tolerance) + ")");
  }
  check(r, violations == 0, "panel violations: " + std::to_string(violations));
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult rate_ratio_panel(const AcceptanceOptions& opt) {
  auto r = begin("rate-ratio-panel",
                 "near-one convergence rate stays within the documented ratio envelope");
  const auto t0 = Clock::now();
  const std::vector<double> deltas{0.9, 0.95, 0.975, 0.99};
  std::vector<double> pooled;
  std::size_t unbounded = 0;
  for (const auto& e : ergodic_panel(opt)) {
    const auto rep = rate_check(e.inst, e.m, deltas, e.grid, 1e-6);
    if (!rep.bounded) ++unbounded;
    std::string ratios;
    for (const auto& p : rep.points) {
      pooled.push_back(p.ratio);
      ratios += (ratios.empty() ? "" : ", ") + num(p.ratio);
    }
    note(r, e.label + ": ratios [" + ratios + "] max=" + num(rep.max_ratio) +
                " median=" + num(rep.median_ratio) + (rep.bounded ? "" : "  UNBOUNDED"));
  }
  std::sort(pooled.begin(), pooled.end());
  const double pooled_median = pooled.empty() ? 0.0
                               : (pooled.size() % 2 ? pooled[pooled.size() / 2]
                                                    : 0.5 * (pooled[pooled.size() / 2 - 1] +
                                                             pooled[pooled.size() / 2]));
  note(r, "pooled: max " + num(pooled.empty() ? 0.0 : pooled.back()) + ", median " +
              num(pooled_median));
  check(r, unbounded == 0,
        "instances with max ratio beyond 3x their median: " + std::to_string(unbounded));
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult lemma_bounds_panel(const AcceptanceOptions& opt) {
  auto r = begin("lemma-bounds-panel", "shift and local-Lipschitz bounds hold on the panel");
  const auto t0 = Clock::now();
  std::size_t violations = 0;
  for (const auto& e : ergodic_panel(opt)) {
    for (double d : {0.5, 0.9}) {
      const auto shift = shift_bound_check(e.inst, e.m, d, e.grid, 1e-6, 1);
      const auto local = lipschitz_near_pi_check(e.inst, e.m, d, e.grid, 1e-6);
      violations += shift.violations + local.violations;
      if (shift.violations || local.violations)
        note(r, e.label + " delta=" + num(d) + ": shift excess " + num(shift.max_excess) +
                    ", local excess " + num(local.max_excess));
    }
  }
  check(r, violations == 0, "panel violations: " + std::to_string(violations));
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult block_payoff_match(const AcceptanceOptions& opt) {
  auto r = begin("block-payoff-match",
                 "geometric-duration block payoff matches the discounted value");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 8000);
  const Belief pi = invariant_distribution(m);
  const std::vector<double> xs{0.3, 0.5, 0.8};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double delta = 1.0 - x;
    const auto res = solve_discounted_value(inst, m, delta, grid, 1e-7);
    const SplitPolicy policy(inst, m, delta, res.v);
    const auto rd = random_duration_payoff(inst, m, pi, policy, x, 100000,
                                           substream_seed(opt.seed, 100 + i));
    const double target = appendix_a_value(delta, pi[0]) / x;
    const double err = std::abs(rd.estimate.mean - target);
    check(r, err <= 3.0 * rd.estimate.stderr_,
          "x=" + num(x) + ": mean " + num(rd.estimate.mean) + " vs target " + num(target) +
              ", |diff| " + num(err) + " <= 3*stderr " + num(3.0 * rd.estimate.stderr_));
    check(r, !rd.projection_error,
          "x=" + num(x) + ": lattice projections stayed in the rounding regime");
  }
  r.seconds = seconds_since(t0);
  check(r, r.seconds <= 120.0, "runtime " + num(r.seconds) + " s (allowed 120 s)");
  return r;
}

CriterionResult erasure_guarantee_panel(const AcceptanceOptions& opt) {
  auto r = begin("erasure-guarantee-panel",
                 "erasure-resistant sender clears the guarantee floor against every adversary");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  const double x = 0.5;
  const std::size_t N = 10000, trials = 2000;
  const double u_inf = sup_abs_u(inst, *grid);
  const double level = appendix_a_value(1.0 - x, invariant_distribution(m)[0]);
  const double deficit = proposition1_bound(x, N, u_inf);
  ThetaStarSender sender(inst, m, x, grid, 1e-6);
  auto advs = adversary_panel();
  for (std::size_t i = 0; i < advs.size(); ++i) {
    const auto stats = run_gamma(inst, m, x, sender, *advs[i], N, trials,
                                 substream_seed(opt.seed, 200 + i), grid);
    const double floor_i = level - deficit - 3.0 * stats.cesaro.stderr_;
    check(r, stats.cesaro.mean >= floor_i,
          advs[i]->name() + ": mean " + num(stats.cesaro.mean) + " >= floor " + num(floor_i) +
              " (level " + num(level) + " - bound " + num(deficit) + " - 3*stderr)");
    if (stats.aborted_trials)
      check(r, false, advs[i]->name() + ": " + std::to_string(stats.aborted_trials) +
                          " aborted trials");
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult erasure_cap_panel(const AcceptanceOptions& opt) {
  auto r = begin("erasure-cap-panel",
                 "calibrated eraser caps every sender at the documented ceiling");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  const double x = 0.2, y = 0.6;
  const std::size_t N = 10000, trials = 2000;
  const double u_inf = sup_abs_u(inst, *grid);
  const double level = appendix_a_value(1.0 - y, invariant_distribution(m)[0]);
  const double excess = proposition2_bound(y, N, u_inf);
  auto senders = sender_panel(inst, m, x, grid, 1e-6);
  for (std::size_t i = 0; i < senders.size(); ++i) {
    auto tau = tau_y(x, y);
    const auto stats = run_gamma(inst, m, x, *senders[i], *tau, N, trials,
                                 substream_seed(opt.seed, 300 + i), grid);
    const double cap_i = level + excess + 3.0 * stats.cesaro.stderr_;
    check(r, stats.cesaro.mean <= cap_i,
          senders[i]->name() + ": mean " + num(stats.cesaro.mean) + " <= cap " + num(cap_i) +
              " (level " + num(level) + " + bound " + num(excess) + " + 3*stderr)");
    if (stats.aborted_trials)
      check(r, false, senders[i]->name() + ": " + std::to_string(stats.aborted_trials) +
                          " aborted trials");
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult erasure_statistics(const AcceptanceOptions& opt) {
  auto r = begin("erasure-statistics",
                 "erasure gaps are geometric; combined erasures are the calibrated coin");
  const auto t0 = Clock::now();
  const auto inst = PersuasionInstance::named("appendixA");
  const auto m = appendix_a_matrix();
  const auto grid = make_grid(2, 2000);
  NoRevealSender sender(inst, grid, m);

  ConstantAdversary quiet(false);
  const auto gap_stats = run_gamma(inst, m, 0.5, sender, quiet, 2000, 100,
                                   substream_seed(opt.seed, 400), grid);
  const auto chi = chi_square_geometric(gap_stats.kappa_histogram, 0.5, 0.001);
  check(r, chi.pass, "gap GOF: chi2=" + num(chi.statistic) + " df=" + num(chi.df) +
                         " p=" + num(chi.p_value) + " over " + std::to_string(chi.samples) +
                         " gaps (alpha 0.001)");

  auto tau = tau_y(0.2, 0.6);
  const auto z_stats = run_gamma(inst, m, 0.2, sender, *tau, 2000, 100,
                                 substream_seed(opt.seed, 401), grid);
  const auto bern = bernoulli_mean_check(z_stats.z_count, z_stats.z_samples, 0.6);
  check(r, bern.pass, "combined erasure mean " + num(bern.empirical) + " vs 0.6 within " +
                          num(bern.bound) + " (4 sigma, " + std::to_string(bern.samples) +
                          " samples)");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult discount_decomposition(const AcceptanceOptions& opt) {
  auto r = begin("discount-decomposition",
                 "discounted sums satisfy the two-parameter decomposition identity");
  const auto t0 = Clock::now();
  const std::vector<std::pair<double, double>> pairs{{0.05, 0.1}, {0.1, 0.5}, {0.3, 1.0}};
  const std::size_t sequences = 100, length = 1200, truncation = 600;
  SplitMix64 rng(substream_seed(opt.seed, 500));
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t s = 0; s < sequences; ++s) {
    std::vector<double> a(length);
    for (auto& v : a) v = 2.0 * rng.uniform01() - 1.0;
    for (const auto& [mu, lambda] : pairs) {
      const auto chk = sorin_identity_check(a, mu, lambda, truncation, 1.0);
      worst = std::max(worst, chk.residual);
      if (!chk.pass) ++failures;
    }
  }
  check(r, failures == 0,
        std::to_string(sequences * pairs.size()) + " checks, worst residual " + num(worst) +
            " (allowed 1e-9)");
  r.seconds = seconds_since(t0);
  check(r, r.seconds <= 5.0, "runtime " + num(r.seconds) + " s (allowed 5 s)");
  return r;
}

// Shared pieces of the two game criteria.
struct GameFixture {
  MatrixGameFamily fam = MatrixGameFamily::example2();
  StochasticMatrix id{std::vector<std::vector<double>>{{1.0, 0.0}, {0.0, 1.0}}};
  GridPtr grid = make_grid(2, 120);
  std::vector<double> cav_u;  // independent envelope oracle on the grid

  GameFixture() {
    std::vector<double> u(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
      u[i] = nonrevealing_value(fam, grid->point(i));
    const auto env = concave_envelope(grid, u);
    cav_u.assign(env.values().begin(), env.values().end());
  }
};

CriterionResult game_value_monotone(const AcceptanceOptions&) {
  auto r = begin("game-value-monotone",
                 "identity-chain game: center value non-increasing and above the envelope floor");
  const auto t0 = Clock::now();
  GameFixture fx;
  const auto rep = game_trajectories(fx.fam, fx.id, {0.0, 0.2, 0.4, 0.6, 0.8}, fx.grid, 20, 1e-6);
  const GridValueFunction cav(fx.grid, fx.cav_u, true);
  const double floor_v = cav.interpolate(rep.pi);
  check(r, std::abs(floor_v - 0.25) <= 1e-9,
        "envelope oracle at the center: " + num(floor_v) + " (expected 0.25)");
  check(r, rep.phi_violations == 0,
        "center value non-increasing (worst increase " + num(rep.max_phi_increase) +
            ", tolerance " + num(rep.tolerance) + ")");
  for (const auto& p : rep.points)
    check(r, p.phi >= floor_v - rep.tolerance,
          "delta=" + num(p.delta) + ": V=" + num(p.phi) + " >= " + num(floor_v) + " - tolerance");
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult game_myopic_limit(const AcceptanceOptions&) {
  auto r = begin("game-myopic-limit",
                 "discount-zero game surface vs the concavified uninformed value "
                 "(known limitation)");
  r.expected_fail = true;
  const auto t0 = Clock::now();
  GameFixture fx;
  const auto g0 = solve_game_value(fx.fam, fx.id, 0.0, fx.grid, 20, 1e-6);
  const double allow = g0.lattice_tolerance + 1e-9;

  double worst_cav = 0.0, worst_oracle = 0.0;
  std::size_t arg_cav = 0;
  for (std::size_t i = 0; i < fx.grid->size(); ++i) {
    const double dc = std::abs(g0.v[i] - fx.cav_u[i]);
    if (dc > worst_cav) {
      worst_cav = dc;
      arg_cav = i;
    }
    worst_oracle = std::max(
        worst_oracle, std::abs(g0.v[i] - one_shot_informed_value(fx.fam, fx.grid->point(i))));
  }
  check(r, worst_cav <= allow,
        "max |V_0 - cav(U)| = " + num(worst_cav) + " at p=" + num(fx.grid->point(arg_cav)[0]) +
            " (allowed " + num(allow) + ")");
  check(r, worst_oracle <= allow,
        "max |V_0 - one-shot informed value| = " + num(worst_oracle) + " (allowed " + num(allow) +
            ")");
  note(r, "analysis: the stage recursion lets the informed player's mixed action depend on the");
  note(r, "state, so its discount-zero value is the one-shot informed value (here min(p, 1-p)),");
  note(r, "which strictly exceeds the concavified uninformed value p(1-p) at interior beliefs;");
  note(r, "the two surfaces only coincide on problems where revealing costs nothing. The");
  note(r, "independent one-shot oracle row above isolates the disagreement to that definition,");
  note(r, "not to the solver. Documented as a known limitation in the README.");
  r.seconds = seconds_since(t0);
  return r;
}

// Independent brute-force fixed point for two-state problems: direct value
// iteration where the envelope is the O(n^2)-per-point pairwise-chord
// maximum rather than a hull construction.
std::vector<double> brute_force_value(const PersuasionInstance& inst, const StochasticMatrix& m,
                                      double delta, std::size_t res) {
  const std::size_t n = res + 1;
  std::vector<double> u(n), pushed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(i) / res;
    u[i] = inst.u(Belief({p, 1.0 - p}));
    pushed[i] = p * m(0, 0) + (1.0 - p) * m(1, 0);
  }
  const auto interp = [&](const std::vector<double>& v, double p) {
    double t = std::min(std::max(p, 0.0), 1.0) * res;
    std::size_t i0 = std::min(static_cast<std::size_t>(t), res - 1);
    const double frac = t - i0;
    return v[i0] + (v[i0 + 1] - v[i0]) * frac;
  };
  std::vector<double> v(n, 0.0), f(n), next(n);
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    for (std::size_t i = 0; i < n; ++i)
      f[i] = (1.0 - delta) * u[i] + delta * interp(v, pushed[i]);
    for (std::size_t i = 0; i < n; ++i) {
      double best = f[i];
      for (std::size_t a = 0; a <= i; ++a)
        for (std::size_t b = i; b < n; ++b) {
          if (a == b) continue;
          const double chord =
              f[a] + (f[b] - f[a]) * (static_cast<double>(i - a) / static_cast<double>(b - a));
          best = std::max(best, chord);
        }
      next[i] = best;
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(next[i] - v[i]));
    v.swap(next);
    if (gap <= 1e-13) break;
  }
  return v;
}

CriterionResult grid_mdp_oracle(const AcceptanceOptions& opt) {
  auto r = begin("grid-mdp-oracle", "solver agrees with a brute-force dynamic-programming oracle");
  const auto t0 = Clock::now();
  const std::size_t res = 60;
  const double delta = 0.5;
  const auto grid = make_grid(2, res);

  struct Case {
    std::string label;
    PersuasionInstance inst;
    StochasticMatrix m;
  };
  std::vector<Case> cases;
  cases.push_back(Case{"appendixA", PersuasionInstance::named("appendixA"), appendix_a_matrix()});
  for (std::size_t i = 0; i < 2; ++i) {
    SplitMix64 rng(substream_seed(opt.seed, 600 + i));
    std::string label = "random-" + std::to_string(i);
    PersuasionInstance inst = random_instance(rng, 2, label);
    StochasticMatrix m = random_balanced_chain(rng, 2);
    cases.push_back(Case{std::move(label), std::move(inst), std::move(m)});
  }
  for (const auto& c : cases) {
    const auto res_v = solve_discounted_value(c.inst, c.m, delta, grid, 1e-7);
    const auto oracle = brute_force_value(c.inst, c.m, delta, res);
    double worst = 0.0;
    for (std::size_t i = 0; i <= res; ++i)
      worst = std::max(worst, std::abs(res_v.v[i] - oracle[i]));
    check(r, worst <= 1e-6, c.label + ": max |solver - oracle| = " + num(worst) +
                                " (allowed 1e-6)");
  }
  r.seconds = seconds_since(t0);
  return r;
}

struct RunnerEntry {
  const char* id;
  CriterionResult (*fn)(const AcceptanceOptions&);
};

const RunnerEntry kRunners[] = {
    {"closed-form-value", closed_form_value},
    {"constant-phi", constant_phi},
    {"increasing-psi", increasing_psi},
    {"periodic-trajectories", periodic_trajectories},
    {"monotone-phi-panel", monotone_phi_panel},
    {"monotone-psi-panel", monotone_psi_panel},
    {"rate-ratio-panel", rate_ratio_panel},
    {"lemma-bounds-panel", lemma_bounds_panel},
    {"block-payoff-match", block_payoff_match},
    {"erasure-guarantee-panel", erasure_guarantee_panel},
    {"erasure-cap-panel", erasure_cap_panel},
    {"erasure-statistics", erasure_statistics},
    {"discount-decomposition", discount_decomposition},
    {"game-value-monotone", game_value_monotone},
    {"game-myopic-limit", game_myopic_limit},
    {"grid-mdp-oracle", grid_mdp_oracle},
};

}  // namespace

const std::vector<std::string>& acceptance_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : kRunners) v.push_back(e.id);
    return v;
  }();
  return ids;
}

CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& opt) {
  for (const auto& e : kRunners)
    if (id == e.id) return e.fn(opt);
  throw std::invalid_argument("unknown acceptance criterion: " + id);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (const auto& e : kRunners) out.push_back(e.fn(opt));
  return out;
}

}  // namespace persuade
