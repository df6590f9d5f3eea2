#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "ohmnet/error.hpp"
#include "ohmnet/graph.hpp"

namespace testutil {

template <typename F>
std::optional<ohmnet::ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const ohmnet::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double inf_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

// Dense Gaussian elimination with partial pivoting on the sink-reduced
// Kirchhoff system; written without Eigen solvers so it stays an
// independent reference for the oracle.
inline Eigen::VectorXd ge_solve_grounded(const ohmnet::WeightedGraph& g) {
  const int n = g.n();
  const int s = g.sink();
  auto idx = [s](int u) { return u < s ? u : u - 1; };
  const int k = n - 1;
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (int u = 0; u < n; ++u)
    if (u != s) a[idx(u)][idx(u)] = g.vol(u);
  for (const auto& e : g.edges()) {
    if (e.u == s || e.v == s) continue;
    a[idx(e.u)][idx(e.v)] -= e.w;
    a[idx(e.v)][idx(e.u)] -= e.w;
  }
  a[idx(g.source())][k] = 1.0;

  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    for (int r = col + 1; r < k; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> x(k, 0.0);
  for (int r = k - 1; r >= 0; --r) {
    double acc = a[r][k];
    for (int c = r + 1; c < k; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  for (int u = 0; u < n; ++u)
    if (u != s) p(u) = x[idx(u)];
  return p;
}

}  // namespace testutil
