#include "ohmnet/selfcheck.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ohmnet/jacobi.hpp"
#include "ohmnet/operators.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/spectral.hpp"
#include "ohmnet/suite.hpp"
#include "ohmnet/tokens.hpp"

namespace ohmnet {

namespace {

struct Ctx {
  SelfcheckResult result;
  std::ostream* log = nullptr;

  void check(const std::string& name, bool ok, const std::string& detail) {
    ++result.checks_run;
    if (!ok) {
      result.failures.push_back(name + " (" + detail + ")");
      if (log) *log << "FAIL " << name << ": " << detail << "\n";
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return {es.eigenvalues().data(),
          es.eigenvalues().data() + es.eigenvalues().size()};
}

void check_graph_core(Ctx& c, const NamedGraph& ng, bool corrupt) {
  const auto& g = ng.graph;
  auto bundle = operator_matrices(g);
  if (corrupt) bundle.P(0, 0) += 1e-3;

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.n());
  c.check("graph_core/P_row_stochastic[" + ng.name + "]",
          (bundle.P * ones - ones).lpNorm<Eigen::Infinity>() <= 1e-12,
          "row sums of the transition matrix must be 1");
  c.check("graph_core/L_kernel[" + ng.name + "]",
          (bundle.L * ones).lpNorm<Eigen::Infinity>() <= 1e-12,
          "all-ones must be in the Laplacian kernel");

  const Eigen::VectorXd sq = bundle.vol.cwiseSqrt();
  const Eigen::MatrixXd conj = sq.asDiagonal() * bundle.P *
                               sq.cwiseInverse().asDiagonal();
  c.check("graph_core/similarity[" + ng.name + "]",
          (bundle.N - conj).cwiseAbs().maxCoeff() <= 1e-12,
          "N must equal D^1/2 P D^-1/2");

  c.check("graph_core/roundtrip[" + ng.name + "]",
          parse_graph(serialize_graph(g)) == g,
          "parse(serialize(g)) must reproduce g");

  // Grounding preserves the spectrum apart from one zero eigenvalue.
  Eigen::MatrixXd N_under = bundle.N;
  N_under.row(g.sink()).setZero();
  N_under.col(g.sink()).setZero();
  Eigen::MatrixXd N_ground(g.n() - 1, g.n() - 1);
  for (int i = 0; i < g.n(); ++i) {
    if (i == g.sink()) continue;
    for (int j = 0; j < g.n(); ++j) {
      if (j == g.sink()) continue;
      N_ground(grounded_index(g, i), grounded_index(g, j)) = N_under(i, j);
    }
  }
  auto under = symmetric_eigenvalues(N_under);
  auto ground = symmetric_eigenvalues(N_ground);
  ground.push_back(0.0);
  std::sort(ground.begin(), ground.end());
  double worst = 0.0;
  for (size_t i = 0; i < under.size(); ++i)
    worst = std::max(worst, std::abs(under[i] - ground[i]));
  c.check("graph_core/grounded_spectrum[" + ng.name + "]", worst <= 1e-9,
          "grounding must only add a zero eigenvalue, worst gap " +
              fmt(worst));
}

void check_oracle(Ctx& c, const NamedGraph& ng) {
  const auto& g = ng.graph;
  const Eigen::VectorXd p = solve_grounded(g);

  c.check("oracle/residual[" + ng.name + "]",
          residual_inf(g, p) <= 1e-9 && p(g.sink()) == 0.0,
          "residual " + fmt(residual_inf(g, p)));
  bool principle = true;
  for (int u = 0; u < g.n(); ++u)
    principle = principle && p(u) >= -1e-12 && p(u) <= p(g.source()) + 1e-12;
  c.check("oracle/maximum_principle[" + ng.name + "]", principle,
          "potentials must lie between the sink and source values");
  const Eigen::VectorXd shifted = p.array() + 5.0;
  c.check("oracle/translation_freedom[" + ng.name + "]",
          residual_inf(g, shifted) <= 1e-9,
          "adding a constant must preserve the residual");
  c.check("oracle/energy_equals_source[" + ng.name + "]",
          std::abs(energy(g, p) - p(g.source())) <= 1e-9,
          "energy " + fmt(energy(g, p)) + " vs " + fmt(p(g.source())));
  const Eigen::VectorXd q = neumann_grounded(g);
  c.check("oracle/neumann_agreement[" + ng.name + "]",
          (p - q).lpNorm<Eigen::Infinity>() <= 1e-8,
          "gap " + fmt((p - q).lpNorm<Eigen::Infinity>()));
}

void check_jacobi(Ctx& c, const NamedGraph& ng) {
  const auto& g = ng.graph;
  const Eigen::VectorXd p = solve_grounded(g);
  const double rho = spectral::rho_star(g);

  const auto run =
      jacobi::run(g, 60, 1.0, Eigen::VectorXd::Zero(g.n()), 0.0);
  c.check("jacobi/message_accounting[" + ng.name + "]",
          run.trajectory.back().messages_sent ==
              2 * static_cast<uint64_t>(g.m()) * run.trajectory.back().round,
          "messages must equal 2 m t");

  const double e0 =
      jacobi::error_decomposition(p, run.trajectory.front().potentials)
          .e_perp.norm();
  bool bound_ok = true;
  double worst = 0.0;
  for (const auto& s : run.trajectory) {
    const double ratio =
        jacobi::error_decomposition(p, s.potentials).e_perp.norm() / e0;
    const double bound =
        jacobi::rate_bound(g.vol_max(), g.vol_min(), rho, s.round) + 1e-9;
    if (ratio > bound) {
      bound_ok = false;
      worst = std::max(worst, ratio - bound);
    }
  }
  c.check("jacobi/rate_bound[" + ng.name + "]", bound_ok,
          "orthogonal error must shrink by sqrt(volmax/volmin) rho*^t, "
          "excess " + fmt(worst));

  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(g.n());
  auto run_base = jacobi::run(g, 40, 1.0, p0, 0.0);
  auto run_shift =
      jacobi::run(g, 40, 1.0, (p0.array() + 0.5).matrix(), 0.0);
  double shift_gap = 0.0;
  for (size_t i = 0; i < run_base.trajectory.size(); ++i)
    shift_gap = std::max(
        shift_gap, ((run_shift.trajectory[i].potentials.array() - 0.5) -
                    run_base.trajectory[i].potentials.array())
                       .abs()
                       .maxCoeff());
  c.check("jacobi/kernel_shift_equivariance[" + ng.name + "]",
          shift_gap <= 1e-12, "trajectories must differ by the shift only");

  const double stop_tol = 1e-13;
  const auto damped =
      jacobi::run(g, 20000, 0.5, Eigen::VectorXd::Zero(g.n()), stop_tol);
  if (damped.converged) {
    const double res =
        residual_inf(g, damped.trajectory.back().potentials);
    c.check("jacobi/damped_fixed_point[" + ng.name + "]",
            res <= 10 * stop_tol * g.vol_max(),
            "converged run must satisfy Kirchhoff, residual " + fmt(res));
  }
}

void check_tokens(Ctx& c, const NamedGraph& ng) {
  const auto& g = ng.graph;
  const Eigen::VectorXd p = solve_grounded(g);
  const double rho_under = spectral::grounded_spectral_radius(g).rho_under;

  auto a = tokens::run(g, 16, 20, 9, 3);
  auto b = tokens::run(g, 16, 20, 9, 3);
  c.check("tokens/determinism[" + ng.name + "]",
          a.est_mean == b.est_mean && a.moves_mean == b.moves_mean,
          "same seed must reproduce the same summary");

  // Integer bookkeeping round by round.
  tokens::State st = tokens::make_state(g, 7, 5);
  bool conserved = true, sink_empty = true;
  for (int t = 0; t < 30 && conserved; ++t) {
    const int64_t before =
        std::accumulate(st.counts.begin(), st.counts.end(), int64_t{0});
    std::vector<int64_t> arrivals(g.n(), 0);
    const int64_t moved = kernels::token_sweep(
        g.adjacency(), st.counts, st.seed, st.replication, st.round, arrivals,
        kernels::Exec::serial);
    const int64_t absorbed = arrivals[g.sink()];
    tokens::round_step(g, st);
    const int64_t after =
        std::accumulate(st.counts.begin(), st.counts.end(), int64_t{0});
    conserved = moved == before && after == before - absorbed + 7;
    sink_empty = sink_empty && st.counts[g.sink()] == 0;
  }
  c.check("tokens/conservation[" + ng.name + "]", conserved,
          "tokens at round end must be start - absorbed + K");
  c.check("tokens/sink_empty[" + ng.name + "]", sink_empty,
          "sink count must be zero after every round");

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(g.n());
  bool monotone = true, nonneg = true, grounded = true, bounded = true;
  double inf_gap = 0.0;
  for (int t = 0; t <= 300; ++t) {
    if (t > 0) {
      const Eigen::VectorXd next = tokens::expected_step(g, phi);
      monotone = monotone && ((next - phi).minCoeff() >= -1e-12);
      phi = next;
    }
    nonneg = nonneg && phi.minCoeff() >= 0.0;
    grounded = grounded && phi(g.sink()) == 0.0;
    const double bound =
        tokens::rate_bound(rho_under, g.vol_max(), g.vol_min(),
                           g.vol(g.source()), t) +
        1e-8;
    bounded = bounded && (phi - p).norm() <= bound;
  }
  inf_gap = (phi - p).lpNorm<Eigen::Infinity>();
  c.check("tokens/phi_monotone_nonnegative[" + ng.name + "]",
          monotone && nonneg && grounded,
          "expected iterates must be grounded, nonnegative, nondecreasing");
  c.check("tokens/phi_rate_bound[" + ng.name + "]", bounded,
          "expected iterates must converge inside the spectral envelope");
  if (rho_under <= 0.9)
    c.check("tokens/phi_limit[" + ng.name + "]", inf_gap <= 1e-8,
            "fixed point must match the oracle, gap " + fmt(inf_gap));
}

void check_token_unbiasedness(Ctx& c, const NamedGraph& ng) {
  const auto& g = ng.graph;
  const auto summary = tokens::run(g, 16, 5, 31, 400);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(g.n());
  bool ok = true;
  for (int t = 1; t <= 5; ++t) {
    phi = tokens::expected_step(g, phi);
    for (int u = 0; u < g.n(); ++u) {
      const double gap = std::abs(summary.mean_at(t, u) - phi(u));
      if (gap > 6.0 * summary.se_at(t, u) + 1e-15) ok = false;
    }
  }
  c.check("tokens/unbiasedness[" + ng.name + "]", ok,
          "Monte-Carlo mean must track the expected iterate");
}

void check_spectral(Ctx& c, const NamedGraph& ng) {
  const auto& g = ng.graph;
  const auto report = spectral::spectral_report(g);

  c.check("spectral/rho1[" + ng.name + "]",
          std::abs(report.rho.front() - 1.0) <= 1e-10,
          "top transition eigenvalue must be 1");
  if (g.n() == 2)
    c.check("spectral/rho_under_degenerate[" + ng.name + "]",
            report.rho_under == 0.0 && report.grounded_degenerate,
            "two-node grounded matrix is the zero matrix");
  else
    c.check("spectral/rho_under_range[" + ng.name + "]",
            report.rho_under > 0.0 && report.rho_under < 1.0,
            "grounded radius must be strictly inside (0, 1)");

  if (g.n() >= 3) {
    const auto gr = spectral::grounded_spectral_radius(g);
    const auto ops = grounded_operators(g);
    const double res = (gr.perron_left.transpose() * ops.P_ground -
                        gr.rho_under * gr.perron_left.transpose())
                           .cwiseAbs()
                           .maxCoeff();
    c.check("spectral/perron_residual[" + ng.name + "]", res <= 1e-10,
            "left Perron vector residual " + fmt(res));
    c.check("spectral/perron_identity[" + ng.name + "]",
            spectral::perron_identity_gap(g) <= 1e-9,
            "gap " + fmt(spectral::perron_identity_gap(g)));
  }

  c.check("spectral/conductance_range[" + ng.name + "]",
          report.phi_cond >= 0.0 && report.phi_cond <= 1.0,
          "conductance must be in [0, 1]");
  c.check("spectral/expansion_range[" + ng.name + "]",
          report.theta >= 0.0 && report.theta <= g.vol_min() + 1e-12,
          "edge expansion must be in [0, vol_min]");
  c.check("spectral/cheeger[" + ng.name + "]", report.cheeger.holds,
          fmt(report.cheeger.lhs) + " vs " + fmt(report.cheeger.rhs));
  c.check("spectral/lambda2_expansion[" + ng.name + "]",
          report.lambda2_expansion.holds,
          fmt(report.lambda2_expansion.lhs) + " vs " +
              fmt(report.lambda2_expansion.rhs));
  c.check("spectral/min_lambda[" + ng.name + "]", report.min_lambda.holds,
          fmt(report.min_lambda.lhs) + " vs " + fmt(report.min_lambda.rhs));
  c.check("spectral/y_norm_sandwich[" + ng.name + "]", report.y_norm.holds,
          fmt(report.y_norm.norm_sq) + " outside [" + fmt(report.y_norm.lo) +
              ", " + fmt(report.y_norm.hi) + "]");
}

}  // namespace

SelfcheckResult selfcheck(bool inject_fault, std::ostream* log) {
  Ctx c;
  c.log = log;
  const auto suite = load_suite();
  for (size_t i = 0; i < suite.size(); ++i) {
    const auto& ng = suite[i];
    if (log) *log << "checking " << ng.name << "\n";
    check_graph_core(c, ng, inject_fault && i == 0);
    check_oracle(c, ng);
    check_jacobi(c, ng);
    check_tokens(c, ng);
    check_spectral(c, ng);
    if (ng.graph.n() <= 4) check_token_unbiasedness(c, ng);
  }
  return c.result;
}

}  // namespace ohmnet
