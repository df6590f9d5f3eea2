#include "ohmnet/oracle.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "ohmnet/operators.hpp"

namespace ohmnet {

Eigen::VectorXd solve_grounded(const WeightedGraph& g) {
  const int n = g.n();
  const int s = g.sink();
  Eigen::MatrixXd L_red = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (int u = 0; u < n; ++u) {
    if (u == s) continue;
    L_red(grounded_index(g, u), grounded_index(g, u)) = g.vol(u);
  }
  for (const auto& e : g.edges()) {
    if (e.u == s || e.v == s) continue;
    const int i = grounded_index(g, e.u);
    const int j = grounded_index(g, e.v);
    L_red(i, j) = -e.w;
    L_red(j, i) = -e.w;
  }
  Eigen::VectorXd b_red = Eigen::VectorXd::Zero(n - 1);
  b_red(grounded_index(g, g.source())) = 1.0;

  Eigen::LLT<Eigen::MatrixXd> llt(L_red);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "reduced Laplacian not SPD");
  Eigen::VectorXd x = llt.solve(b_red);

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  for (int u = 0; u < n; ++u)
    if (u != s) p(u) = x(grounded_index(g, u));
  return p;
}

Eigen::VectorXd neumann_grounded(const WeightedGraph& g, double tail_tol,
                                 int max_terms) {
  const auto ops = grounded_operators(g);
  Eigen::VectorXd term = ops.b_under;
  for (int u = 0; u < g.n(); ++u) term(u) /= g.vol(u);  // D^-1 b_under
  Eigen::VectorXd sum = term;
  for (int k = 1; k < max_terms; ++k) {
    term = ops.P_under * term;
    sum += term;
    if (term.lpNorm<Eigen::Infinity>() < tail_tol) return sum;
  }
  fail(ErrorCode::SingularSystem, "series did not settle");
}

double FlowAssignment::flow(int u, int v) const {
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u == u && edges_[i].v == v) return values_[i];
    if (edges_[i].u == v && edges_[i].v == u) return -values_[i];
  }
  return 0.0;
}

FlowAssignment edge_flows(const WeightedGraph& g, const Eigen::VectorXd& p) {
  std::vector<double> values;
  values.reserve(g.edges().size());
  for (const auto& e : g.edges()) values.push_back(e.w * (p(e.u) - p(e.v)));
  return FlowAssignment(g.edges(), std::move(values));
}

double net_outflow(const WeightedGraph& g, const Eigen::VectorXd& p, int u) {
  const auto a = g.adjacency();
  double acc = 0.0;
  for (int k = a.offsets[u]; k < a.offsets[u + 1]; ++k)
    acc += a.wts[k] * (p(u) - p(a.nbr[k]));
  return acc;
}

double energy(const WeightedGraph& g, const Eigen::VectorXd& p) {
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    const double d = p(e.u) - p(e.v);
    acc += e.w * d * d;
  }
  return acc;
}

double residual_inf(const WeightedGraph& g, const Eigen::VectorXd& p) {
  double worst = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    double r = net_outflow(g, p, u);
    if (u == g.source()) r -= 1.0;
    if (u == g.sink()) r += 1.0;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace ohmnet
