#pragma once

#include <algorithm>
#include <cstdint>

#include "ohmnet/kernels.hpp"
#include "ohmnet/rng.hpp"

namespace ohmnet::kernels::detail {

inline double jacobi_row(const AdjacencyView& a, std::span<const double> p,
                         std::span<const double> b, double damping, int u) {
  double acc = b[u];
  for (int k = a.offsets[u]; k < a.offsets[u + 1]; ++k)
    acc += a.wts[k] * p[a.nbr[k]];
  const double relaxed = acc / a.vol[u];
  return (1.0 - damping) * p[u] + damping * relaxed;
}

// Inverse-CDF draw over the neighbors of u, sorted by node id.
inline int token_target(const AdjacencyView& a, int u, double r01) {
  const double r = r01 * a.vol[u];
  const double* first = a.cumw.data() + a.offsets[u];
  const double* last = a.cumw.data() + a.offsets[u + 1];
  const double* it = std::upper_bound(first, last, r);
  if (it == last) --it;  // r01*vol can round up onto the final cumulative sum
  return a.nbr[a.offsets[u] + static_cast<int>(it - first)];
}

struct CutEval {
  double crossing = 0.0;
  double vol_s = 0.0;
  int card = 0;
};

inline CutEval eval_cut(const AdjacencyView& a, uint32_t mask) {
  CutEval e;
  for (int u = 0; u < a.n; ++u) {
    if (!((mask >> u) & 1u)) continue;
    ++e.card;
    e.vol_s += a.vol[u];
    for (int k = a.offsets[u]; k < a.offsets[u + 1]; ++k)
      if (!((mask >> a.nbr[k]) & 1u)) e.crossing += a.wts[k];
  }
  return e;
}

// (value, mask) with smallest value, ties to the smallest mask. Exact
// comparisons keep the reduction order-independent.
inline void take_better(CutResult& best, double value, uint32_t mask) {
  if (value < best.value || (value == best.value && mask < best.mask)) {
    best.value = value;
    best.mask = mask;
  }
}

}  // namespace ohmnet::kernels::detail
