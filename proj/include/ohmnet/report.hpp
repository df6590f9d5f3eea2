#pragma once

#include <json.hpp>
#include <string>

#include "ohmnet/graph.hpp"
#include "ohmnet/spectral.hpp"

namespace ohmnet::report {

using json = nlohmann::ordered_json;

json graph_json(const WeightedGraph& g);
json oracle_json(const WeightedGraph& g);
json spectral_json(const spectral::SpectralReport& r);

struct CompareConfig {
  int rounds = 300;
  int64_t inject_rate = 500;
  double damping = 1.0;
  uint64_t seed = 1;
  int reps = 16;
  double stop_tol = 1e-12;
};

struct CompareResult {
  json report;
  std::string jacobi_csv;
  std::string tokens_csv;
  bool all_pass = false;
};

/// Runs the oracle, both processes and the spectral checks on one graph and
/// assembles the unified report with one verdict per bound.
CompareResult run_compare(const WeightedGraph& g, const CompareConfig& cfg);

}  // namespace ohmnet::report
