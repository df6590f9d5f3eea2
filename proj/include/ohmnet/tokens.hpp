#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ohmnet/graph.hpp"
#include "ohmnet/kernels.hpp"

namespace ohmnet::tokens {

/// Integer token counts per node, advanced one synchronous round at a time.
/// All randomness is a pure function of (seed, replication, round, token
/// index), so a state replays identically regardless of schedule.
struct State {
  std::vector<int64_t> counts;
  int64_t inject_rate = 1;  // tokens injected at the source each round
  uint64_t round = 0;
  uint64_t seed = 0;
  uint64_t replication = 0;
  uint64_t moves_total = 0;
};

State make_state(const WeightedGraph& g, int64_t inject_rate, uint64_t seed,
                 uint64_t replication = 0);

/// One round: move every token simultaneously, inject at the source, zero
/// the sink. Throws TokenOverflow past 2^53 tokens at a node.
void round_step(const WeightedGraph& g, State& s,
                kernels::Exec exec = kernels::Exec::serial);

/// Potential estimator: counts / (inject_rate * vol), 0 at the sink.
Eigen::VectorXd estimate(const WeightedGraph& g, const State& s);

/// Expected-estimator recurrence: the grounded affine map applied once.
Eigen::VectorXd expected_step(const WeightedGraph& g,
                              const Eigen::VectorXd& phi);

/// Iterate the recurrence from the all-zero vector for `rounds` rounds.
Eigen::VectorXd expected_iterate(const WeightedGraph& g, int rounds);

/// sqrt(vol_max/vol_min) * rho_under^t / ((1 - rho_under) * vol(source)):
/// distance of the expected iterate from its fixed point after t rounds.
double rate_bound(double rho_under, double vol_max, double vol_min,
                  double vol_source, uint64_t t);
double rate_bound(const WeightedGraph& g, uint64_t t);

/// Smallest expected value the estimator resolves to relative accuracy eps
/// with failure probability delta: 3 ln(2/delta) / (eps^2 K vol_u).
double accuracy_threshold(double eps, double delta, int64_t inject_rate,
                          double vol_u);

/// Inverse form: minimal injection rate that resolves values above
/// `potential_floor` at a node of volume vol_u.
double min_rate_for(double eps, double delta, double potential_floor,
                    double vol_u);

struct TokenCountBound {
  double stationary_exact = 0.0;  // sum_u K vol(u) p_u
  double upper = 0.0;             // K n vol_max E
};
TokenCountBound token_count_bound(const WeightedGraph& g, int64_t inject_rate);

/// Monte-Carlo summary over independent replications. Means/variances are
/// merged in replication order; output is identical for a fixed seed.
struct Summary {
  int n = 0;
  int rounds = 0;
  int reps = 0;
  int64_t inject_rate = 0;
  uint64_t seed = 0;
  std::vector<double> est_mean;    // (rounds+1) x n, row-major in t
  std::vector<double> est_var;     // sample variance across replications
  std::vector<double> moves_mean;  // mean cumulative moves at each t
  std::vector<double> est_final;   // reps x n, estimates at t = rounds
  bool recorded = false;
  std::vector<int64_t> count_records;  // reps x (rounds+1) x n when recorded
  std::vector<uint64_t> move_records;  // reps x (rounds+1) when recorded

  double mean_at(int t, int u) const { return est_mean[t * n + u]; }
  double var_at(int t, int u) const { return est_var[t * n + u]; }
  double se_at(int t, int u) const;
};

Summary run(const WeightedGraph& g, int64_t inject_rate, int rounds,
            uint64_t seed, int reps, bool record = false,
            kernels::Exec exec = kernels::Exec::openmp);

/// CSV columns: replication, t, node, Z, estimate, phi, moves. Requires a
/// summary produced with record = true.
void write_csv(std::ostream& os, const WeightedGraph& g, const Summary& s);

}  // namespace ohmnet::tokens
