#include "ohmnet/report.hpp"

#include <cmath>
#include <sstream>

#include "ohmnet/jacobi.hpp"
#include "ohmnet/operators.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/tokens.hpp"

namespace ohmnet::report {

json graph_json(const WeightedGraph& g) {
  json j;
  j["n"] = g.n();
  j["m"] = g.m();
  j["source"] = g.source();
  j["sink"] = g.sink();
  j["vol_min"] = g.vol_min();
  j["vol_max"] = g.vol_max();
  return j;
}

json oracle_json(const WeightedGraph& g) {
  const Eigen::VectorXd p = solve_grounded(g);
  const Eigen::VectorXd q = neumann_grounded(g);
  const auto flows = edge_flows(g, p);

  json j;
  j["p"] = std::vector<double>(p.data(), p.data() + g.n());
  j["energy"] = energy(g, p);
  j["residual_inf"] = residual_inf(g, p);
  j["neumann_gap"] = (p - q).lpNorm<Eigen::Infinity>();
  json fl = json::array();
  for (size_t i = 0; i < flows.edges().size(); ++i) {
    const auto& e = flows.edges()[i];
    fl.push_back({{"u", e.u}, {"v", e.v}, {"flow", flows.value(i)}});
  }
  j["flows"] = fl;
  return j;
}

namespace {

json bound_json(const spectral::BoundCheck& c) {
  return {{"lhs", c.lhs},
          {"rhs", c.rhs},
          {"holds", c.holds},
          {"vacuous", c.vacuous}};
}

}  // namespace

json spectral_json(const spectral::SpectralReport& r) {
  json j;
  j["rho"] = r.rho;
  j["rho_star"] = r.rho_star;
  j["rho_under"] = r.rho_under;
  j["lambda_under"] = r.lambda_under;
  j["lambda_bar_2"] =
      r.lambda_bar_2_defined ? json(r.lambda_bar_2) : json(nullptr);
  j["phi_cond"] = r.phi_cond;
  j["phi_witness"] = r.phi_witness;
  j["theta"] = r.theta;
  j["theta_witness"] = r.theta_witness;
  j["grounded_degenerate"] = r.grounded_degenerate;
  j["bounds"] = {{"cheeger", bound_json(r.cheeger)},
                 {"lambda2_expansion", bound_json(r.lambda2_expansion)},
                 {"min_lambda", bound_json(r.min_lambda)},
                 {"y_norm_sandwich",
                  {{"norm_sq", r.y_norm.norm_sq},
                   {"lo", r.y_norm.lo},
                   {"hi", r.y_norm.hi},
                   {"holds", r.y_norm.holds}}}};
  return j;
}

CompareResult run_compare(const WeightedGraph& g, const CompareConfig& cfg) {
  CompareResult out;
  json& j = out.report;

  j["config"] = {{"rounds", cfg.rounds}, {"K", cfg.inject_rate},
                 {"beta", cfg.damping},  {"seed", cfg.seed},
                 {"reps", cfg.reps},     {"stop_tol", cfg.stop_tol}};
  j["graph"] = graph_json(g);
  j["oracle"] = oracle_json(g);

  const auto spec = spectral::spectral_report(g);
  j["spectral"] = spectral_json(spec);

  const Eigen::VectorXd p = solve_grounded(g);

  json checks;
  auto add_check = [&checks](const std::string& name, bool holds,
                             bool vacuous = false) {
    checks[name] = {{"holds", holds}, {"vacuous", vacuous}};
  };

  add_check("oracle_residual", residual_inf(g, p) <= 1e-9);
  add_check("oracle_neumann_agreement",
            j["oracle"]["neumann_gap"].get<double>() <= 1e-8);
  add_check("cheeger", spec.cheeger.holds);
  add_check("lambda2_expansion", spec.lambda2_expansion.holds);
  add_check("min_lambda", spec.min_lambda.holds, spec.min_lambda.vacuous);
  add_check("y_norm_sandwich", spec.y_norm.holds);
  if (g.n() >= 3)
    add_check("perron_identity", spectral::perron_identity_gap(g) <= 1e-9);
  else
    add_check("perron_identity", true, true);

  // Jacobi process.
  const auto jrun = jacobi::run(g, cfg.rounds, cfg.damping,
                                Eigen::VectorXd::Zero(g.n()), cfg.stop_tol);
  {
    std::ostringstream csv;
    jacobi::write_trajectory_csv(csv, g, jrun, p, spec.rho_star);
    out.jacobi_csv = csv.str();
  }
  const auto& jlast = jrun.trajectory.back();
  const double e0 =
      jacobi::error_decomposition(p, jrun.trajectory.front().potentials)
          .e_perp.norm();
  bool jacobi_bound_ok = true;
  if (cfg.damping == 1.0 && e0 > 0.0) {
    for (const auto& s : jrun.trajectory) {
      const double ratio =
          jacobi::error_decomposition(p, s.potentials).e_perp.norm() / e0;
      if (ratio > jacobi::rate_bound(g.vol_max(), g.vol_min(), spec.rho_star,
                                     s.round) +
                      1e-9)
        jacobi_bound_ok = false;
    }
    add_check("jacobi_rate_bound", jacobi_bound_ok);
  } else {
    add_check("jacobi_rate_bound", true, true);  // stated for beta = 1 only
  }
  add_check("jacobi_message_accounting",
            jlast.messages_sent ==
                2 * static_cast<uint64_t>(g.m()) * jlast.round);
  j["jacobi"] = {
      {"beta", cfg.damping},
      {"rounds_run", jlast.round},
      {"converged", jrun.converged},
      {"final_err_perp",
       jacobi::error_decomposition(p, jlast.potentials).e_perp.norm()},
      {"messages", jlast.messages_sent}};

  // Token process.
  const auto summary = tokens::run(g, cfg.inject_rate, cfg.rounds, cfg.seed,
                                   cfg.reps, /*record=*/true);
  {
    std::ostringstream csv;
    tokens::write_csv(csv, g, summary);
    out.tokens_csv = csv.str();
  }
  const Eigen::VectorXd phi = tokens::expected_iterate(g, cfg.rounds);
  bool phi_bound_ok = true;
  {
    Eigen::VectorXd it = Eigen::VectorXd::Zero(g.n());
    for (int t = 0; t <= cfg.rounds; ++t) {
      if (t > 0) it = tokens::expected_step(g, it);
      const double bound =
          tokens::rate_bound(spec.rho_under, g.vol_max(), g.vol_min(),
                             g.vol(g.source()), t) +
          1e-8;
      if ((it - p).norm() > bound) phi_bound_ok = false;
    }
  }
  add_check("diffusion_rate_bound", phi_bound_ok);

  const auto tcb = tokens::token_count_bound(g, cfg.inject_rate);
  double mean_total = 0.0;
  {
    const int steps = cfg.rounds + 1;
    for (int rep = 0; rep < cfg.reps; ++rep)
      for (int u = 0; u < g.n(); ++u)
        mean_total += static_cast<double>(
            summary
                .count_records[(static_cast<size_t>(rep) * steps + cfg.rounds)
                                   * g.n() + u]);
    mean_total /= cfg.reps;
  }
  add_check("token_count_upper", mean_total <= tcb.upper);

  bool unbiased_ok = true;
  if (cfg.reps >= 8) {
    for (int u = 0; u < g.n(); ++u) {
      if (u == g.sink()) continue;
      const double gap = std::abs(summary.mean_at(cfg.rounds, u) - phi(u));
      if (gap > 4.0 * summary.se_at(cfg.rounds, u) + 1e-15)
        unbiased_ok = false;
    }
    add_check("estimator_within_4se", unbiased_ok);
  } else {
    add_check("estimator_within_4se", true, true);
  }

  j["tokens"] = {
      {"K", cfg.inject_rate},
      {"reps", cfg.reps},
      {"rounds", cfg.rounds},
      {"est_mean_final", [&] {
         std::vector<double> v(g.n());
         for (int u = 0; u < g.n(); ++u) v[u] = summary.mean_at(cfg.rounds, u);
         return v;
       }()},
      {"phi_final", std::vector<double>(phi.data(), phi.data() + g.n())},
      {"rate_bound_final",
       tokens::rate_bound(spec.rho_under, g.vol_max(), g.vol_min(),
                          g.vol(g.source()), cfg.rounds)},
      {"mean_total_final", mean_total},
      {"count_stationary_exact", tcb.stationary_exact},
      {"count_upper", tcb.upper}};

  bool all = true;
  for (const auto& [name, c] : checks.items())
    if (!c["holds"].get<bool>()) all = false;
  j["checks"] = checks;
  j["all_checks_pass"] = all;
  out.all_pass = all;
  return out;
}

}  // namespace ohmnet::report
