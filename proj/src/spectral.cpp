#include "ohmnet/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ohmnet/operators.hpp"

namespace ohmnet::spectral {

namespace {

constexpr double kBoundTol = 1e-10;

// Symmetric conjugate of the grounded transition matrix: rows/columns of
// the sink deleted, entries w_uv / sqrt(vol u * vol v).
Eigen::MatrixXd grounded_symmetric(const WeightedGraph& g) {
  const int n = g.n();
  const int s = g.sink();
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (const auto& e : g.edges()) {
    if (e.u == s || e.v == s) continue;
    const int i = grounded_index(g, e.u);
    const int j = grounded_index(g, e.v);
    const double x = e.w / std::sqrt(g.vol(e.u) * g.vol(e.v));
    N(i, j) = x;
    N(j, i) = x;
  }
  return N;
}

std::vector<int> mask_to_nodes(uint32_t mask, int n) {
  std::vector<int> nodes;
  for (int u = 0; u < n; ++u)
    if ((mask >> u) & 1u) nodes.push_back(u);
  return nodes;
}

kernels::CutResult scan_or_throw(const WeightedGraph& g,
                                 kernels::CutObjective obj,
                                 kernels::Exec exec) {
  if (g.n() > 24)
    fail(ErrorCode::TooLargeForExact,
         "subset enumeration capped at 24 nodes, graph has " +
             std::to_string(g.n()));
  return kernels::cut_scan(g.adjacency(), obj, exec);
}

}  // namespace

std::vector<double> eigen_spectrum(const WeightedGraph& g) {
  const auto ops = operator_matrices(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.N);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "eigen decomposition failed");
  std::vector<double> vals(es.eigenvalues().data(),
                           es.eigenvalues().data() + g.n());
  std::reverse(vals.begin(), vals.end());
  return vals;
}

double rho_star_of(const std::vector<double>& spectrum) {
  return std::max(std::abs(spectrum[1]), std::abs(spectrum.back()));
}

double rho_star(const WeightedGraph& g) {
  return rho_star_of(eigen_spectrum(g));
}

std::vector<double> laplacian_spectrum(const WeightedGraph& g) {
  const auto ops = operator_matrices(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.L);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "eigen decomposition failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + g.n()};
}

GroundedRadius grounded_spectral_radius(const WeightedGraph& g) {
  const int n = g.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(grounded_symmetric(g));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "eigen decomposition failed");

  GroundedRadius out;
  out.rho_under = es.eigenvalues()(n - 2);  // largest; nonneg by Perron
  Eigen::VectorXd x = es.eigenvectors().col(n - 2);

  // Left eigenvector of P_ground is D^{1/2} x.
  Eigen::VectorXd v(n - 1);
  for (int u = 0; u < n; ++u) {
    if (u == g.sink()) continue;
    const int i = grounded_index(g, u);
    v(i) = std::sqrt(g.vol(u)) * x(i);
  }
  if (v.sum() < 0.0) v = -v;
  for (int i = 0; i < n - 1; ++i)
    if (v(i) < 0.0 && v(i) > -1e-12) v(i) = 0.0;
  out.perron_left = v / v.lpNorm<1>();
  return out;
}

double perron_identity_gap(const WeightedGraph& g) {
  const auto gr = grounded_spectral_radius(g);
  double absorbed = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    if (u == g.sink()) continue;
    const double p_to_sink = g.weight(u, g.sink()) / g.vol(u);
    absorbed += gr.perron_left(grounded_index(g, u)) * p_to_sink;
  }
  return std::abs(gr.rho_under - (1.0 - absorbed));
}

CutValue conductance(const WeightedGraph& g, kernels::Exec exec) {
  const auto r = scan_or_throw(g, kernels::CutObjective::conductance, exec);
  return {r.value, mask_to_nodes(r.mask, g.n())};
}

CutValue edge_expansion(const WeightedGraph& g, kernels::Exec exec) {
  const auto r = scan_or_throw(g, kernels::CutObjective::expansion, exec);
  return {r.value, mask_to_nodes(r.mask, g.n())};
}

BoundCheck check_cheeger(const WeightedGraph& g, kernels::Exec exec) {
  BoundCheck c;
  c.name = "cheeger";
  const auto spectrum = eigen_spectrum(g);
  const double phi = conductance(g, exec).value;
  c.lhs = spectrum[1];
  c.rhs = 1.0 - phi * phi / 2.0;
  c.holds = c.lhs <= c.rhs + kBoundTol;
  return c;
}

BoundCheck check_lambda2_expansion(const WeightedGraph& g,
                                   kernels::Exec exec) {
  BoundCheck c;
  c.name = "lambda2_expansion";
  const double theta = edge_expansion(g, exec).value;
  const double vm = g.vol_max();
  c.lhs = laplacian_spectrum(g)[1];
  c.rhs = vm - std::sqrt(vm * vm - theta * theta);
  c.holds = c.lhs >= c.rhs - kBoundTol;
  return c;
}

SinkRemovedLambda2 sink_removed_lambda2(const WeightedGraph& g) {
  const int n = g.n();
  const int s = g.sink();
  SinkRemovedLambda2 out;
  if (n - 1 < 2) return out;

  // Connectivity of the sink-removed graph, checked combinatorially.
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    if (e.u == s || e.v == s) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  const int start = s == 0 ? 1 : 0;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  if (reached != n - 1) return out;

  Eigen::MatrixXd L_bar = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (const auto& e : g.edges()) {
    if (e.u == s || e.v == s) continue;
    const int i = grounded_index(g, e.u);
    const int j = grounded_index(g, e.v);
    L_bar(i, i) += e.w;
    L_bar(j, j) += e.w;
    L_bar(i, j) -= e.w;
    L_bar(j, i) -= e.w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L_bar);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "eigen decomposition failed");
  out.value = es.eigenvalues()(1);
  out.defined = true;
  return out;
}

BoundCheck check_min_lambda(const WeightedGraph& g) {
  BoundCheck c;
  c.name = "min_lambda";
  c.lhs = 1.0 - grounded_spectral_radius(g).rho_under;

  const auto l2 = sink_removed_lambda2(g);
  if (!l2.defined) {
    c.rhs = 0.0;
    c.vacuous = true;
    c.holds = true;
    return c;
  }
  double sum = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    if (u == g.sink()) continue;
    const double w = g.weight(u, g.sink());
    sum += w / (w + l2.value);
  }
  c.rhs = l2.value / (2.0 * g.vol_max() * (g.n() - 1)) * sum;
  c.holds = c.lhs >= c.rhs - kBoundTol;
  return c;
}

YNormCheck check_y_norm(const WeightedGraph& g) {
  const int n = g.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(grounded_symmetric(g));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "eigen decomposition failed");
  // Top eigenvector of N_ground attains the smallest eigenvalue of I - N_ground.
  const Eigen::VectorXd x = es.eigenvectors().col(n - 2);

  YNormCheck c;
  for (int u = 0; u < n; ++u) {
    if (u == g.sink()) continue;
    const double xi = x(grounded_index(g, u));
    c.norm_sq += xi * xi / g.vol(u);
  }
  c.lo = 1.0 / g.vol_max();
  c.hi = 1.0 / g.vol_min();
  c.holds = c.norm_sq >= c.lo - kBoundTol && c.norm_sq <= c.hi + kBoundTol;
  return c;
}

SpectralReport spectral_report(const WeightedGraph& g, kernels::Exec exec) {
  SpectralReport r;
  r.rho = eigen_spectrum(g);
  r.rho_star = rho_star_of(r.rho);
  const auto gr = grounded_spectral_radius(g);
  r.rho_under = gr.rho_under;
  r.lambda_under = 1.0 - gr.rho_under;
  const auto l2 = sink_removed_lambda2(g);
  r.lambda_bar_2 = l2.defined ? l2.value : 0.0;
  r.lambda_bar_2_defined = l2.defined;
  const auto phi = conductance(g, exec);
  r.phi_cond = phi.value;
  r.phi_witness = phi.witness;
  const auto theta = edge_expansion(g, exec);
  r.theta = theta.value;
  r.theta_witness = theta.witness;
  r.cheeger = check_cheeger(g, exec);
  r.lambda2_expansion = check_lambda2_expansion(g, exec);
  r.min_lambda = check_min_lambda(g);
  r.y_norm = check_y_norm(g);
  r.grounded_degenerate = g.n() == 2;
  return r;
}

}  // namespace ohmnet::spectral
