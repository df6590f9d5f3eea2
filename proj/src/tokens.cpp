#include "ohmnet/tokens.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ohmnet/operators.hpp"
#include "ohmnet/oracle.hpp"
#include "ohmnet/spectral.hpp"

namespace ohmnet::tokens {

namespace {
constexpr int64_t kMaxCount = int64_t{1} << 53;  // float-exact ceiling
}

State make_state(const WeightedGraph& g, int64_t inject_rate, uint64_t seed,
                 uint64_t replication) {
  if (inject_rate < 1)
    fail(ErrorCode::ParameterOutOfRange, "inject_rate must be >= 1");
  State s;
  s.counts.assign(g.n(), 0);
  s.inject_rate = inject_rate;
  s.seed = seed;
  s.replication = replication;
  return s;
}

void round_step(const WeightedGraph& g, State& s, kernels::Exec exec) {
  const int n = g.n();
  std::vector<int64_t> arrivals(n, 0);
  const int64_t moved =
      kernels::token_sweep(g.adjacency(), s.counts, s.seed, s.replication,
                           s.round, arrivals, exec);
  s.counts = std::move(arrivals);
  s.counts[g.source()] += s.inject_rate;
  s.counts[g.sink()] = 0;
  s.moves_total += static_cast<uint64_t>(moved);
  ++s.round;
  for (int u = 0; u < n; ++u)
    if (s.counts[u] > kMaxCount)
      fail(ErrorCode::TokenOverflow,
           "token count at node " + std::to_string(u) + " exceeded 2^53");
}

Eigen::VectorXd estimate(const WeightedGraph& g, const State& s) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.n());
  for (int u = 0; u < g.n(); ++u)
    v(u) = static_cast<double>(s.counts[u]) /
           (static_cast<double>(s.inject_rate) * g.vol(u));
  v(g.sink()) = 0.0;
  return v;
}

Eigen::VectorXd expected_step(const WeightedGraph& g,
                              const Eigen::VectorXd& phi) {
  const int n = g.n();
  Eigen::VectorXd out(n);
  const Eigen::VectorXd b = demand_vector(g);
  kernels::jacobi_sweep(g.adjacency(), {phi.data(), static_cast<size_t>(n)},
                        {b.data(), static_cast<size_t>(n)}, 1.0,
                        {out.data(), static_cast<size_t>(n)},
                        kernels::Exec::serial);
  out(g.sink()) = 0.0;
  return out;
}

Eigen::VectorXd expected_iterate(const WeightedGraph& g, int rounds) {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(g.n());
  for (int t = 0; t < rounds; ++t) phi = expected_step(g, phi);
  return phi;
}

double rate_bound(double rho_under, double vol_max, double vol_min,
                  double vol_source, uint64_t t) {
  if (rho_under >= 1.0)
    fail(ErrorCode::DegenerateSpectrum, "grounded spectral radius >= 1");
  return std::sqrt(vol_max / vol_min) *
         std::pow(rho_under, static_cast<double>(t)) /
         ((1.0 - rho_under) * vol_source);
}

double rate_bound(const WeightedGraph& g, uint64_t t) {
  return rate_bound(spectral::grounded_spectral_radius(g).rho_under,
                    g.vol_max(), g.vol_min(), g.vol(g.source()), t);
}

double accuracy_threshold(double eps, double delta, int64_t inject_rate,
                          double vol_u) {
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || inject_rate < 1 ||
      !(vol_u > 0.0))
    fail(ErrorCode::ParameterOutOfRange,
         "need eps > 0, delta in (0,1), inject_rate >= 1, vol > 0");
  return 3.0 * std::log(2.0 / delta) /
         (eps * eps * static_cast<double>(inject_rate) * vol_u);
}

double min_rate_for(double eps, double delta, double potential_floor,
                    double vol_u) {
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0) ||
      !(potential_floor > 0.0) || !(vol_u > 0.0))
    fail(ErrorCode::ParameterOutOfRange,
         "need eps > 0, delta in (0,1), floor > 0, vol > 0");
  return 3.0 * std::log(2.0 / delta) / (eps * eps * potential_floor * vol_u);
}

TokenCountBound token_count_bound(const WeightedGraph& g,
                                  int64_t inject_rate) {
  const Eigen::VectorXd p = solve_grounded(g);
  const double k = static_cast<double>(inject_rate);
  TokenCountBound b;
  for (int u = 0; u < g.n(); ++u) b.stationary_exact += k * g.vol(u) * p(u);
  b.upper = k * g.n() * g.vol_max() * energy(g, p);
  return b;
}

double Summary::se_at(int t, int u) const {
  return std::sqrt(var_at(t, u) / reps);
}

Summary run(const WeightedGraph& g, int64_t inject_rate, int rounds,
            uint64_t seed, int reps, bool record, kernels::Exec exec) {
  if (rounds < 0) fail(ErrorCode::ParameterOutOfRange, "rounds must be >= 0");
  if (reps < 1) fail(ErrorCode::ParameterOutOfRange, "reps must be >= 1");
  if (inject_rate < 1)
    fail(ErrorCode::ParameterOutOfRange, "inject_rate must be >= 1");
  const int n = g.n();
  const int steps = rounds + 1;

  Summary out;
  out.n = n;
  out.rounds = rounds;
  out.reps = reps;
  out.inject_rate = inject_rate;
  out.seed = seed;
  out.recorded = record;

  std::vector<double> est(static_cast<size_t>(reps) * steps * n, 0.0);
  std::vector<uint64_t> moves(static_cast<size_t>(reps) * steps, 0);
  if (record) out.count_records.assign(est.size(), 0);

  const kernels::Exec inner =
      (reps > 1 && exec == kernels::Exec::openmp) ? kernels::Exec::serial
                                                  : exec;
  const bool fan_out = reps > 1 && exec == kernels::Exec::openmp;

  // Exceptions (the overflow guard) may not escape the parallel region.
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) if (fan_out)
  for (int rep = 0; rep < reps; ++rep) {
    try {
      State st = make_state(g, inject_rate, seed, static_cast<uint64_t>(rep));
      for (int t = 0; t <= rounds; ++t) {
        if (t > 0) round_step(g, st, inner);
        const size_t base = (static_cast<size_t>(rep) * steps + t) * n;
        const Eigen::VectorXd v = estimate(g, st);
        for (int u = 0; u < n; ++u) est[base + u] = v(u);
        moves[static_cast<size_t>(rep) * steps + t] = st.moves_total;
        if (record)
          for (int u = 0; u < n; ++u)
            out.count_records[base + u] = st.counts[u];
      }
    } catch (...) {
#pragma omp critical(ohmnet_tokens_run_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  // Merge in replication order; associative and schedule-independent.
  out.est_mean.assign(static_cast<size_t>(steps) * n, 0.0);
  out.est_var.assign(static_cast<size_t>(steps) * n, 0.0);
  out.moves_mean.assign(steps, 0.0);
  out.est_final.assign(static_cast<size_t>(reps) * n, 0.0);
  for (int t = 0; t < steps; ++t) {
    for (int u = 0; u < n; ++u) {
      double mean = 0.0, m2 = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        const double x = est[(static_cast<size_t>(rep) * steps + t) * n + u];
        const double d = x - mean;
        mean += d / (rep + 1);
        m2 += d * (x - mean);
      }
      out.est_mean[t * n + u] = mean;
      out.est_var[t * n + u] = reps > 1 ? m2 / (reps - 1) : 0.0;
    }
    double mm = 0.0;
    for (int rep = 0; rep < reps; ++rep)
      mm += static_cast<double>(moves[static_cast<size_t>(rep) * steps + t]);
    out.moves_mean[t] = mm / reps;
  }
  for (int rep = 0; rep < reps; ++rep)
    for (int u = 0; u < n; ++u)
      out.est_final[static_cast<size_t>(rep) * n + u] =
          est[(static_cast<size_t>(rep) * steps + rounds) * n + u];
  if (record) out.move_records = std::move(moves);
  return out;
}

void write_csv(std::ostream& os, const WeightedGraph& g, const Summary& s) {
  if (!s.recorded)
    fail(ErrorCode::InvalidParams, "summary was produced without record");
  auto fmt = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  const int n = s.n;
  const int steps = s.rounds + 1;
  std::vector<Eigen::VectorXd> phi(steps);
  phi[0] = Eigen::VectorXd::Zero(n);
  for (int t = 1; t < steps; ++t) phi[t] = expected_step(g, phi[t - 1]);

  os << "replication,t,node,Z,estimate,phi,moves\n";
  for (int rep = 0; rep < s.reps; ++rep)
    for (int t = 0; t < steps; ++t)
      for (int u = 0; u < n; ++u) {
        const size_t base = (static_cast<size_t>(rep) * steps + t) * n;
        const double z = static_cast<double>(s.count_records[base + u]);
        const double est =
            u == g.sink()
                ? 0.0
                : z / (static_cast<double>(s.inject_rate) * g.vol(u));
        os << rep << "," << t << "," << u << ","
           << s.count_records[base + u] << "," << fmt(est) << ","
           << fmt(phi[t](u)) << ","
           << s.move_records[static_cast<size_t>(rep) * steps + t] << "\n";
      }
}

}  // namespace ohmnet::tokens
