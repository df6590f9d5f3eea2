#include "ohmnet/jacobi.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ohmnet/operators.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/spectral.hpp"

namespace ohmnet::jacobi {

State make_state(const WeightedGraph& g, double damping) {
  return make_state(g, damping, Eigen::VectorXd::Zero(g.n()));
}

State make_state(const WeightedGraph& g, double damping,
                 const Eigen::VectorXd& init) {
  if (!(damping > 0.0 && damping <= 1.0))
    fail(ErrorCode::ParameterOutOfRange,
         "damping must be in (0, 1], got " + std::to_string(damping));
  if (init.size() != g.n())
    fail(ErrorCode::InvalidParams, "initial vector has wrong length");
  State s;
  s.potentials = init;
  s.damping = damping;
  return s;
}

State step(const WeightedGraph& g, const State& s, kernels::Exec exec) {
  State next;
  next.potentials.resize(g.n());
  const Eigen::VectorXd b = demand_vector(g);
  kernels::jacobi_sweep(
      g.adjacency(), {s.potentials.data(), static_cast<size_t>(g.n())},
      {b.data(), static_cast<size_t>(g.n())}, s.damping,
      {next.potentials.data(), static_cast<size_t>(g.n())}, exec);
  next.round = s.round + 1;
  next.damping = s.damping;
  next.messages_sent = s.messages_sent + 2 * static_cast<uint64_t>(g.m());
  return next;
}

Run run(const WeightedGraph& g, int rounds, double damping,
        const Eigen::VectorXd& init, double stop_tol, kernels::Exec exec) {
  if (rounds < 0) fail(ErrorCode::ParameterOutOfRange, "rounds must be >= 0");
  Run r;
  r.trajectory.reserve(rounds + 1);
  r.trajectory.push_back(make_state(g, damping, init));
  for (int t = 0; t < rounds; ++t) {
    State next = step(g, r.trajectory.back(), exec);
    const double delta = (next.potentials - r.trajectory.back().potentials)
                             .lpNorm<Eigen::Infinity>();
    r.trajectory.push_back(std::move(next));
    if (delta < stop_tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

ErrorDecomposition error_decomposition(const Eigen::VectorXd& reference,
                                       const Eigen::VectorXd& estimate) {
  ErrorDecomposition d;
  d.e = reference - estimate;
  d.alpha = d.e.mean();
  d.e_perp = d.e.array() - d.alpha;
  return d;
}

double rate_bound(double vol_max, double vol_min, double rho_star,
                  uint64_t t) {
  return std::sqrt(vol_max / vol_min) *
         std::pow(rho_star, static_cast<double>(t));
}

double rate_bound(const WeightedGraph& g, uint64_t t) {
  return rate_bound(g.vol_max(), g.vol_min(), spectral::rho_star(g), t);
}

void write_trajectory_csv(std::ostream& os, const WeightedGraph& g,
                          const Run& run, const Eigen::VectorXd& reference,
                          double rho_star) {
  auto fmt = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  const double e0 =
      error_decomposition(reference, run.trajectory.front().potentials)
          .e_perp.norm();
  os << "t,err_perp_norm,bound,residual_inf,messages\n";
  for (const auto& s : run.trajectory) {
    const auto d = error_decomposition(reference, s.potentials);
    const double bound =
        rate_bound(g.vol_max(), g.vol_min(), rho_star, s.round) * e0;
    os << s.round << "," << fmt(d.e_perp.norm()) << "," << fmt(bound) << ","
       << fmt(residual_inf(g, s.potentials)) << "," << s.messages_sent
       << "\n";
  }
}

}  // namespace ohmnet::jacobi
