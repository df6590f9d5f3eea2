#pragma once

#include <cstdint>
#include <span>

namespace ohmnet::kernels {

// Every kernel has a serial reference implementation and an OpenMP one.
// Both produce bit-identical results; the tests compare them directly.
enum class Exec { serial, openmp };

// CSR adjacency of an undirected weighted graph, neighbors sorted by id.
struct AdjacencyView {
  int n = 0;
  std::span<const int> offsets;     // n+1
  std::span<const int> nbr;         // 2m
  std::span<const double> wts;      // 2m
  std::span<const double> cumw;     // 2m, per-node inclusive prefix sums
  std::span<const double> vol;      // n
};

// out[u] = (1-damping)*p[u] + damping*(b[u] + sum_{v~u} w_uv p[v]) / vol[u]
void jacobi_sweep(const AdjacencyView& a, std::span<const double> p,
                  std::span<const double> b, double damping,
                  std::span<double> out, Exec exec);

// Moves every token one step, based on start-of-round counts, accumulating
// into `arrivals` (must be zero-initialized, may not alias `counts`).
// The draw for the j-th token at node u is a pure function of
// (seed, replication, round, prefix(u)+j), where prefix is the exclusive
// scan of `counts` over node ids. Returns the number of tokens moved.
int64_t token_sweep(const AdjacencyView& a, std::span<const int64_t> counts,
                    uint64_t seed, uint64_t replication, uint64_t round,
                    std::span<int64_t> arrivals, Exec exec);

enum class CutObjective { conductance, expansion };

struct CutResult {
  double value = 0.0;
  uint32_t mask = 0;  // witness subset, bit u set iff node u in S
};

// Exhaustive scan over nonempty proper subsets within the objective's size
// constraint. Ties broken by smallest mask. Caller enforces n <= 24.
CutResult cut_scan(const AdjacencyView& a, CutObjective obj, Exec exec);

}  // namespace ohmnet::kernels
