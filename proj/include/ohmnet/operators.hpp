#pragma once

#include <Eigen/Dense>

#include "ohmnet/graph.hpp"

namespace ohmnet {

/// Dense operator set of a weighted graph: adjacency A, Laplacian L = D - A,
/// transition P = D^-1 A and its symmetric conjugate N = D^-1/2 A D^-1/2.
struct OperatorBundle {
  Eigen::MatrixXd A;
  Eigen::MatrixXd L;
  Eigen::MatrixXd P;
  Eigen::MatrixXd N;
  Eigen::VectorXd vol;  // diagonal of D
  double vol_min = 0.0;
  double vol_max = 0.0;

  Eigen::MatrixXd D() const { return vol.asDiagonal(); }
};

OperatorBundle operator_matrices(const WeightedGraph& g);

/// Unit current injection: +1 at source, -1 at sink, 0 elsewhere.
Eigen::VectorXd demand_vector(const WeightedGraph& g);

/// P with the sink row and column zeroed (P_under), b with the sink entry
/// zeroed, and the sink row/column deleted form (P_ground).
struct GroundedOperators {
  Eigen::MatrixXd P_under;   // n x n
  Eigen::VectorXd b_under;   // n
  Eigen::MatrixXd P_ground;  // (n-1) x (n-1)
};

GroundedOperators grounded_operators(const WeightedGraph& g);

/// Position of node u in the sink-deleted numbering. u must not be the sink.
int grounded_index(const WeightedGraph& g, int u);

}  // namespace ohmnet
