#include <limits>
#include <vector>

#include "kernels_detail.hpp"

namespace ohmnet::kernels {

using namespace detail;

void jacobi_sweep_serial(const AdjacencyView&, std::span<const double>,
                         std::span<const double>, double, std::span<double>);
int64_t token_sweep_serial(const AdjacencyView&, std::span<const int64_t>,
                           uint64_t, uint64_t, uint64_t, std::span<int64_t>);
CutResult cut_scan_serial(const AdjacencyView&, CutObjective);

namespace {

void jacobi_sweep_omp(const AdjacencyView& a, std::span<const double> p,
                      std::span<const double> b, double damping,
                      std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (int u = 0; u < a.n; ++u) out[u] = jacobi_row(a, p, b, damping, u);
}

int64_t token_sweep_omp(const AdjacencyView& a, std::span<const int64_t> counts,
                        uint64_t seed, uint64_t replication, uint64_t round,
                        std::span<int64_t> arrivals) {
  // Round-local token indices come from the exclusive scan of the counts, so
  // each draw is schedule-independent; per-thread arrival buffers merge by
  // integer addition, which commutes exactly.
  std::vector<int64_t> prefix(a.n + 1, 0);
  for (int u = 0; u < a.n; ++u) prefix[u + 1] = prefix[u] + counts[u];

  int64_t* arr = arrivals.data();
  const int n = a.n;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : arr[:n])
  for (int u = 0; u < n; ++u) {
    for (int64_t j = 0; j < counts[u]; ++j) {
      const double r = unit_draw(seed, replication, round,
                                 static_cast<uint64_t>(prefix[u] + j));
      ++arr[token_target(a, u, r)];
    }
  }
  return prefix[a.n];
}

CutResult cut_scan_omp(const AdjacencyView& a, CutObjective obj) {
  double half_vol = 0.0;
  for (int u = 0; u < a.n; ++u) half_vol += a.vol[u];
  half_vol *= 0.5;

  CutResult best{std::numeric_limits<double>::infinity(), 0};
  const int64_t limit = (int64_t{1} << a.n) - 1;
#pragma omp parallel
  {
    CutResult local{std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static) nowait
    for (int64_t m = 1; m < limit; ++m) {
      const auto mask = static_cast<uint32_t>(m);
      const CutEval e = eval_cut(a, mask);
      if (obj == CutObjective::conductance) {
        if (e.vol_s <= half_vol) take_better(local, e.crossing / e.vol_s, mask);
      } else {
        if (2 * e.card <= a.n) take_better(local, e.crossing / e.card, mask);
      }
    }
#pragma omp critical(ohmnet_cut_scan_merge)
    take_better(best, local.value, local.mask);
  }
  return best;
}

}  // namespace

void jacobi_sweep(const AdjacencyView& a, std::span<const double> p,
                  std::span<const double> b, double damping,
                  std::span<double> out, Exec exec) {
  if (exec == Exec::openmp)
    jacobi_sweep_omp(a, p, b, damping, out);
  else
    jacobi_sweep_serial(a, p, b, damping, out);
}

int64_t token_sweep(const AdjacencyView& a, std::span<const int64_t> counts,
                    uint64_t seed, uint64_t replication, uint64_t round,
                    std::span<int64_t> arrivals, Exec exec) {
  if (exec == Exec::openmp)
    return token_sweep_omp(a, counts, seed, replication, round, arrivals);
  return token_sweep_serial(a, counts, seed, replication, round, arrivals);
}

CutResult cut_scan(const AdjacencyView& a, CutObjective obj, Exec exec) {
  if (exec == Exec::openmp) return cut_scan_omp(a, obj);
  return cut_scan_serial(a, obj);
}

}  // namespace ohmnet::kernels
