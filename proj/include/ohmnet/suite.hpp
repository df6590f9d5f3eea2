#pragma once

#include <string>
#include <vector>

#include "ohmnet/graph.hpp"

namespace ohmnet {

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

/// The standard verification family: single edge, P3, K4, C5, 3x3 grid,
/// barbell(4,4) and ten random(8, 0.5) draws with weights in [0.1, 10].
std::vector<NamedGraph> builtin_suite();

/// builtin_suite(), unless OHM_SUITE_DIR points at a directory of *.graph
/// files, which are then loaded instead (sorted by filename).
std::vector<NamedGraph> load_suite();

}  // namespace ohmnet
