#include <limits>
#include <vector>

#include "kernels_detail.hpp"

namespace ohmnet::kernels {

using namespace detail;

void jacobi_sweep_serial(const AdjacencyView& a, std::span<const double> p,
                         std::span<const double> b, double damping,
                         std::span<double> out) {
  for (int u = 0; u < a.n; ++u) out[u] = jacobi_row(a, p, b, damping, u);
}

int64_t token_sweep_serial(const AdjacencyView& a,
                           std::span<const int64_t> counts, uint64_t seed,
                           uint64_t replication, uint64_t round,
                           std::span<int64_t> arrivals) {
  int64_t moved = 0;
  int64_t prefix = 0;
  for (int u = 0; u < a.n; ++u) {
    const int64_t z = counts[u];
    for (int64_t j = 0; j < z; ++j) {
      const double r = unit_draw(seed, replication, round,
                                 static_cast<uint64_t>(prefix + j));
      ++arrivals[token_target(a, u, r)];
    }
    prefix += z;
    moved += z;
  }
  return moved;
}

CutResult cut_scan_serial(const AdjacencyView& a, CutObjective obj) {
  double half_vol = 0.0;
  for (int u = 0; u < a.n; ++u) half_vol += a.vol[u];
  half_vol *= 0.5;

  CutResult best{std::numeric_limits<double>::infinity(), 0};
  const uint32_t limit = (1u << a.n) - 1;
  for (uint32_t mask = 1; mask < limit; ++mask) {
    const CutEval e = eval_cut(a, mask);
    if (obj == CutObjective::conductance) {
      if (e.vol_s <= half_vol) take_better(best, e.crossing / e.vol_s, mask);
    } else {
      if (2 * e.card <= a.n)
        take_better(best, e.crossing / e.card, mask);
    }
  }
  return best;
}

}  // namespace ohmnet::kernels
