#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ohmnet/graph.hpp"

namespace ohmnet {

/// Grounded solution of Kirchhoff's equations: L p = b with p[sink] = 0.
/// Deletes the sink row/column, solves the reduced SPD system directly,
/// reinserts the zero.
Eigen::VectorXd solve_grounded(const WeightedGraph& g);

/// Same limit through the geometric series of the grounded transition
/// operator. Kept as an independent cross-check for solve_grounded.
Eigen::VectorXd neumann_grounded(const WeightedGraph& g,
                                 double tail_tol = 1e-16,
                                 int max_terms = 2000000);

/// Per-edge currents f(u,v) = w_uv (p_u - p_v), antisymmetric.
class FlowAssignment {
 public:
  FlowAssignment(std::vector<Edge> edges, std::vector<double> values)
      : edges_(std::move(edges)), values_(std::move(values)) {}

  /// Signed flow from u to v; 0 if the edge is absent.
  double flow(int u, int v) const;
  double value(size_t edge_index) const { return values_[edge_index]; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<Edge> edges_;    // flow oriented from e.u to e.v
  std::vector<double> values_;
};

FlowAssignment edge_flows(const WeightedGraph& g, const Eigen::VectorXd& p);

/// Net current leaving u under the flow induced by p.
double net_outflow(const WeightedGraph& g, const Eigen::VectorXd& p, int u);

/// Dissipated power p^T L p, accumulated edge-wise.
double energy(const WeightedGraph& g, const Eigen::VectorXd& p);

/// ||L p - b||_inf without materializing dense operators.
double residual_inf(const WeightedGraph& g, const Eigen::VectorXd& p);

}  // namespace ohmnet
