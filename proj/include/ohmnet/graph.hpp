#pragma once

#include <span>
#include <string>
#include <vector>

#include "ohmnet/error.hpp"
#include "ohmnet/kernels.hpp"

namespace ohmnet {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

/// Connected undirected graph with strictly positive edge weights and a
/// designated source/sink pair. Immutable after construction; safe to share
/// read-only across threads.
class WeightedGraph {
 public:
  /// Validates and builds. Throws DuplicateEdge, SelfLoop, NonPositiveWeight,
  /// Disconnected, SourceEqualsSink or IdOutOfRange.
  static WeightedGraph build(int n, std::vector<Edge> edges, int source,
                             int sink);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<Edge>& edges() const { return edges_; }

  double vol(int u) const { return vol_[u]; }
  double vol_min() const { return vol_min_; }
  double vol_max() const { return vol_max_; }
  double vol_total() const { return vol_total_; }

  /// Weight of {u,v}, 0 if the edge is absent.
  double weight(int u, int v) const;
  int degree(int u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const int> neighbor_offsets() const { return offsets_; }
  std::span<const int> neighbors() const { return nbr_; }
  std::span<const double> weights() const { return wts_; }
  std::span<const double> volumes() const { return vol_; }

  kernels::AdjacencyView adjacency() const {
    return {n_, offsets_, nbr_, wts_, cumw_, vol_};
  }

  bool operator==(const WeightedGraph& o) const;

 private:
  WeightedGraph() = default;

  int n_ = 0;
  int source_ = 0;
  int sink_ = 0;
  std::vector<Edge> edges_;  // canonical: u < v, sorted lexicographically
  std::vector<int> offsets_;
  std::vector<int> nbr_;
  std::vector<double> wts_;
  std::vector<double> cumw_;
  std::vector<double> vol_;
  double vol_min_ = 0.0;
  double vol_max_ = 0.0;
  double vol_total_ = 0.0;
};

/// Edge-list text format: first line `n`; one `u v w` triple per line;
/// then `source <id>` and `sink <id>`. `#` starts a comment.
WeightedGraph parse_graph(const std::string& text);
std::string serialize_graph(const WeightedGraph& g);

WeightedGraph load_graph_file(const std::string& path);
void save_graph_file(const WeightedGraph& g, const std::string& path);

}  // namespace ohmnet
