#pragma once

#include <cstdint>
#include <string>

#include "ohmnet/graph.hpp"

namespace ohmnet::gen {

// All families fix source = 0 and sink = last node, except `cycle`
// (sink = n/2, the antipode). Deterministic for fixed parameters.

WeightedGraph path(int n, double w = 1.0);
WeightedGraph cycle(int n, double w = 1.0);
WeightedGraph complete(int n, double w = 1.0);
WeightedGraph grid(int rows, int cols, double w = 1.0);

/// Two cliques of size `clique` joined by a path of `bridge` extra nodes
/// (bridge = 0 means a direct edge between the cliques).
WeightedGraph barbell(int clique, int bridge, double w = 1.0);

/// G(n, p) with log-uniform weights in [wmin, wmax], resampled until
/// connected. Throws ConnectivityRetryExhausted after max_retries draws.
WeightedGraph random_connected(int n, double edge_prob, double wmin,
                               double wmax, uint64_t seed,
                               int max_retries = 100);

struct FamilyParams {
  int n = 0;
  int n2 = 0;  // barbell bridge length; grid columns (0 = square)
  double w = 1.0;
  double edge_prob = 0.5;
  double wmin = 1.0;
  double wmax = 1.0;
  uint64_t seed = 0;
};

/// Dispatch by family name: path, cycle, complete, grid, barbell, random.
WeightedGraph from_family(const std::string& family, const FamilyParams& p);

}  // namespace ohmnet::gen
