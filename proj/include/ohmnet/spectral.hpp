#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ohmnet/graph.hpp"
#include "ohmnet/kernels.hpp"

namespace ohmnet::spectral {

/// Eigenvalues of the transition matrix P, descending, computed on the
/// symmetric conjugate N.
std::vector<double> eigen_spectrum(const WeightedGraph& g);

/// Second largest absolute eigenvalue: max(|rho_2|, |rho_n|).
double rho_star_of(const std::vector<double>& spectrum);
double rho_star(const WeightedGraph& g);

/// Eigenvalues of the Laplacian L, ascending.
std::vector<double> laplacian_spectrum(const WeightedGraph& g);

struct GroundedRadius {
  double rho_under = 0.0;
  Eigen::VectorXd perron_left;  // grounded indexing, l1-normalized, sign-fixed
};

/// Spectral radius of the grounded transition matrix and the left Perron
/// vector of P_ground, through the symmetric conjugate N_ground.
GroundedRadius grounded_spectral_radius(const WeightedGraph& g);

/// |rho_under - (1 - sum_i v_i P(i,sink))| with ||v||_1 = 1.
double perron_identity_gap(const WeightedGraph& g);

struct CutValue {
  double value = 0.0;
  std::vector<int> witness;
};

/// Exact bottleneck ratio by subset enumeration. Throws TooLargeForExact
/// when n > 24.
CutValue conductance(const WeightedGraph& g,
                     kernels::Exec exec = kernels::Exec::openmp);

/// Exact edge expansion by subset enumeration. Same size cap.
CutValue edge_expansion(const WeightedGraph& g,
                        kernels::Exec exec = kernels::Exec::openmp);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool vacuous = false;
};

/// rho_2 <= 1 - phi^2/2
BoundCheck check_cheeger(const WeightedGraph& g,
                         kernels::Exec exec = kernels::Exec::openmp);

/// lambda_2 >= vol_max - sqrt(vol_max^2 - theta^2)
BoundCheck check_lambda2_expansion(const WeightedGraph& g,
                                   kernels::Exec exec = kernels::Exec::openmp);

/// lambda_under >= lambda_bar_2/(2 vol_max (n-1)) * sum_i w_is/(w_is + lambda_bar_2),
/// vacuous when the sink-removed graph is a single node or disconnected.
BoundCheck check_min_lambda(const WeightedGraph& g);

struct YNormCheck {
  double norm_sq = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool holds = false;
};

/// 1/vol_max <= ||D^-1/2 x||^2 <= 1/vol_min for the unit eigenvector x
/// attaining lambda_under on the perturbed normalized Laplacian.
YNormCheck check_y_norm(const WeightedGraph& g);

/// Second smallest Laplacian eigenvalue of the sink-removed graph, or
/// unset when that graph is a single node or disconnected.
struct SinkRemovedLambda2 {
  double value = 0.0;
  bool defined = false;
};
SinkRemovedLambda2 sink_removed_lambda2(const WeightedGraph& g);

struct SpectralReport {
  std::vector<double> rho;
  double rho_star = 0.0;
  double rho_under = 0.0;
  double lambda_under = 0.0;
  double lambda_bar_2 = 0.0;      // 0 when not defined
  bool lambda_bar_2_defined = false;
  double phi_cond = 0.0;
  double theta = 0.0;
  std::vector<int> phi_witness;
  std::vector<int> theta_witness;
  BoundCheck cheeger;
  BoundCheck lambda2_expansion;
  BoundCheck min_lambda;
  YNormCheck y_norm;
  bool grounded_degenerate = false;  // n == 2: grounded matrix is [0]
  bool all_hold() const {
    return cheeger.holds && lambda2_expansion.holds && min_lambda.holds &&
           y_norm.holds;
  }
};

SpectralReport spectral_report(const WeightedGraph& g,
                               kernels::Exec exec = kernels::Exec::openmp);

}  // namespace ohmnet::spectral
