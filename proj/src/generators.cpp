#include "ohmnet/generators.hpp"

#include <cmath>

#include "ohmnet/rng.hpp"

namespace ohmnet::gen {

namespace {

void need(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorCode::InvalidParams, msg);
}

}  // namespace

WeightedGraph path(int n, double w) {
  need(n >= 2, "path needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return WeightedGraph::build(n, std::move(edges), 0, n - 1);
}

WeightedGraph cycle(int n, double w) {
  need(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return WeightedGraph::build(n, std::move(edges), 0, n / 2);
}

WeightedGraph complete(int n, double w) {
  need(n >= 2, "complete needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  return WeightedGraph::build(n, std::move(edges), 0, n - 1);
}

WeightedGraph grid(int rows, int cols, double w) {
  need(rows >= 1 && cols >= 1 && rows * cols >= 2, "grid needs >= 2 nodes");
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), w});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), w});
    }
  return WeightedGraph::build(rows * cols, std::move(edges), 0,
                              rows * cols - 1);
}

WeightedGraph barbell(int clique, int bridge, double w) {
  need(clique >= 2, "barbell needs clique size >= 2");
  need(bridge >= 0, "barbell needs bridge length >= 0");
  const int n = 2 * clique + bridge;
  std::vector<Edge> edges;
  for (int i = 0; i < clique; ++i)
    for (int j = i + 1; j < clique; ++j) edges.push_back({i, j, w});
  const int b0 = clique;             // first bridge node (if any)
  const int c2 = clique + bridge;    // first node of the second clique
  for (int i = c2; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  int prev = clique - 1;
  for (int k = 0; k < bridge; ++k) {
    edges.push_back({prev, b0 + k, w});
    prev = b0 + k;
  }
  edges.push_back({prev, c2, w});
  return WeightedGraph::build(n, std::move(edges), 0, n - 1);
}

WeightedGraph random_connected(int n, double edge_prob, double wmin,
                               double wmax, uint64_t seed, int max_retries) {
  need(n >= 2, "random needs n >= 2");
  need(edge_prob > 0.0 && edge_prob <= 1.0, "edge_prob must be in (0, 1]");
  need(wmin > 0.0 && wmin <= wmax, "need 0 < wmin <= wmax");
  const double log_ratio = std::log(wmax / wmin);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const uint64_t pair = static_cast<uint64_t>(i) * n + j;
        if (unit_draw(seed, attempt, pair, 0) >= edge_prob) continue;
        const double u = unit_draw(seed, attempt, pair, 1);
        edges.push_back({i, j, wmin * std::exp(log_ratio * u)});
      }
    try {
      return WeightedGraph::build(n, std::move(edges), 0, n - 1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Disconnected) throw;
    }
  }
  fail(ErrorCode::ConnectivityRetryExhausted,
       "no connected draw in " + std::to_string(max_retries) + " attempts");
}

WeightedGraph from_family(const std::string& family, const FamilyParams& p) {
  if (family == "path") return path(p.n, p.w);
  if (family == "cycle") return cycle(p.n, p.w);
  if (family == "complete") return complete(p.n, p.w);
  if (family == "grid") return grid(p.n, p.n2 > 0 ? p.n2 : p.n, p.w);
  if (family == "barbell") return barbell(p.n, p.n2, p.w);
  if (family == "random")
    return random_connected(p.n, p.edge_prob, p.wmin, p.wmax, p.seed);
  fail(ErrorCode::InvalidParams, "unknown family '" + family + "'");
}

}  // namespace ohmnet::gen
