#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ohmnet/graph.hpp"
#include "ohmnet/kernels.hpp"

namespace ohmnet::jacobi {

/// Per-round state of the synchronous potential-exchange process.
struct State {
  Eigen::VectorXd potentials;
  uint64_t round = 0;
  double damping = 1.0;  // 1 = undamped update, 1/2 = lazy variant
  uint64_t messages_sent = 0;
};

State make_state(const WeightedGraph& g, double damping = 1.0);
State make_state(const WeightedGraph& g, double damping,
                 const Eigen::VectorXd& init);

/// One synchronous round: every node averages its neighbors' values plus
/// its demand term; 2m messages are exchanged.
State step(const WeightedGraph& g, const State& s,
           kernels::Exec exec = kernels::Exec::serial);

struct Run {
  std::vector<State> trajectory;  // trajectory[0] is the initial state
  bool converged = false;         // stopped by the successive-delta tolerance
};

Run run(const WeightedGraph& g, int rounds, double damping,
        const Eigen::VectorXd& init, double stop_tol = 1e-12,
        kernels::Exec exec = kernels::Exec::serial);

/// Split of reference - estimate into the component orthogonal to the
/// all-ones direction and the all-ones coefficient.
struct ErrorDecomposition {
  Eigen::VectorXd e;
  Eigen::VectorXd e_perp;
  double alpha = 0.0;
};

ErrorDecomposition error_decomposition(const Eigen::VectorXd& reference,
                                       const Eigen::VectorXd& estimate);

/// sqrt(vol_max/vol_min) * rho_star^t — the guaranteed shrink factor of the
/// orthogonal error after t undamped rounds.
double rate_bound(double vol_max, double vol_min, double rho_star, uint64_t t);
double rate_bound(const WeightedGraph& g, uint64_t t);

/// CSV columns: t, err_perp_norm, bound, residual_inf, messages.
/// `bound` is the rate bound scaled by the initial orthogonal error norm.
void write_trajectory_csv(std::ostream& os, const WeightedGraph& g,
                          const Run& run, const Eigen::VectorXd& reference,
                          double rho_star);

}  // namespace ohmnet::jacobi
