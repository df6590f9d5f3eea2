#include "ohmnet/operators.hpp"

namespace ohmnet {

OperatorBundle operator_matrices(const WeightedGraph& g) {
  const int n = g.n();
  OperatorBundle b;
  b.A = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    b.A(e.u, e.v) = e.w;
    b.A(e.v, e.u) = e.w;
  }
  b.vol = Eigen::VectorXd::Zero(n);
  for (int u = 0; u < n; ++u) b.vol(u) = g.vol(u);
  b.L = Eigen::MatrixXd(b.vol.asDiagonal()) - b.A;
  b.P = b.vol.cwiseInverse().asDiagonal() * b.A;
  Eigen::VectorXd isq = b.vol.cwiseSqrt().cwiseInverse();
  b.N = isq.asDiagonal() * b.A * isq.asDiagonal();
  b.vol_min = g.vol_min();
  b.vol_max = g.vol_max();
  return b;
}

Eigen::VectorXd demand_vector(const WeightedGraph& g) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(g.n());
  b(g.source()) = 1.0;
  b(g.sink()) = -1.0;
  return b;
}

GroundedOperators grounded_operators(const WeightedGraph& g) {
  const int n = g.n();
  const int s = g.sink();
  GroundedOperators out;
  out.P_under = operator_matrices(g).P;
  out.P_under.row(s).setZero();
  out.P_under.col(s).setZero();
  out.b_under = demand_vector(g);
  out.b_under(s) = 0.0;
  out.P_ground = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    if (i == s) continue;
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      out.P_ground(i < s ? i : i - 1, j < s ? j : j - 1) = out.P_under(i, j);
    }
  }
  return out;
}

int grounded_index(const WeightedGraph& g, int u) {
  return u < g.sink() ? u : u - 1;
}

}  // namespace ohmnet
