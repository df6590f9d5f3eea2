#include "ohmnet/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ohmnet {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SourceEqualsSink: return "SourceEqualsSink";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ConnectivityRetryExhausted: return "ConnectivityRetryExhausted";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::TokenOverflow: return "TokenOverflow";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

WeightedGraph WeightedGraph::build(int n, std::vector<Edge> edges, int source,
                                   int sink) {
  if (n < 2) fail(ErrorCode::InvalidParams, "need at least 2 nodes");
  auto check_id = [n](int id, const char* what) {
    if (id < 0 || id >= n)
      fail(ErrorCode::IdOutOfRange,
           std::string(what) + " " + std::to_string(id) + " not in [0, " +
               std::to_string(n) + ")");
  };
  check_id(source, "source");
  check_id(sink, "sink");
  if (source == sink) fail(ErrorCode::SourceEqualsSink, "source equals sink");

  for (auto& e : edges) {
    check_id(e.u, "endpoint");
    check_id(e.v, "endpoint");
    if (e.u == e.v)
      fail(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.u));
    if (!(e.w > 0.0))
      fail(ErrorCode::NonPositiveWeight,
           "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
               "} has weight " + std::to_string(e.w));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      fail(ErrorCode::DuplicateEdge, "edge {" + std::to_string(edges[i].u) +
                                         "," + std::to_string(edges[i].v) +
                                         "} listed twice");

  WeightedGraph g;
  g.n_ = n;
  g.source_ = source;
  g.sink_ = sink;
  g.edges_ = std::move(edges);

  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + deg[u];
  const int slots = g.offsets_[n];
  g.nbr_.assign(slots, 0);
  g.wts_.assign(slots, 0.0);
  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.nbr_[cursor[e.u]] = e.v;
    g.wts_[cursor[e.u]++] = e.w;
    g.nbr_[cursor[e.v]] = e.u;
    g.wts_[cursor[e.v]++] = e.w;
  }
  // Neighbors sorted by id within each node (the sampling order contract).
  for (int u = 0; u < n; ++u) {
    std::vector<std::pair<int, double>> adj;
    for (int k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k)
      adj.emplace_back(g.nbr_[k], g.wts_[k]);
    std::sort(adj.begin(), adj.end());
    for (int k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k) {
      g.nbr_[k] = adj[k - g.offsets_[u]].first;
      g.wts_[k] = adj[k - g.offsets_[u]].second;
    }
  }

  g.cumw_.assign(slots, 0.0);
  g.vol_.assign(n, 0.0);
  for (int u = 0; u < n; ++u) {
    double acc = 0.0;
    for (int k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k) {
      acc += g.wts_[k];
      g.cumw_[k] = acc;
    }
    g.vol_[u] = acc;
  }

  // Connectivity (BFS from node 0).
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k) {
      int v = g.nbr_[k];
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != n)
    fail(ErrorCode::Disconnected, std::to_string(n - reached) +
                                      " of " + std::to_string(n) +
                                      " nodes unreachable from node 0");

  g.vol_min_ = *std::min_element(g.vol_.begin(), g.vol_.end());
  g.vol_max_ = *std::max_element(g.vol_.begin(), g.vol_.end());
  double total = 0.0;
  for (double v : g.vol_) total += v;
  g.vol_total_ = total;
  return g;
}

double WeightedGraph::weight(int u, int v) const {
  for (int k = offsets_[u]; k < offsets_[u + 1]; ++k)
    if (nbr_[k] == v) return wts_[k];
  return 0.0;
}

bool WeightedGraph::operator==(const WeightedGraph& o) const {
  if (n_ != o.n_ || source_ != o.source_ || sink_ != o.sink_ ||
      edges_.size() != o.edges_.size())
    return false;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].u != o.edges_[i].u || edges_[i].v != o.edges_[i].v ||
        edges_[i].w != o.edges_[i].w)
      return false;
  return true;
}

namespace {

std::string fmt_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

WeightedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  int n = -1;
  std::vector<Edge> edges;
  int source = -1, sink = -1;
  bool have_source = false, have_sink = false;

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment-only line

    if (n < 0) {
      try {
        size_t pos = 0;
        n = std::stoi(first, &pos);
        if (pos != first.size()) throw std::invalid_argument(first);
      } catch (const std::exception&) {
        syntax_error(lineno, "expected node count, got '" + first + "'");
      }
      std::string extra;
      if (ls >> extra) syntax_error(lineno, "trailing token '" + extra + "'");
      continue;
    }

    if (first == "source" || first == "sink") {
      int id;
      if (!(ls >> id)) syntax_error(lineno, "expected node id after '" + first + "'");
      std::string extra;
      if (ls >> extra) syntax_error(lineno, "trailing token '" + extra + "'");
      if (first == "source") {
        if (have_source) syntax_error(lineno, "duplicate source line");
        source = id;
        have_source = true;
      } else {
        if (have_sink) syntax_error(lineno, "duplicate sink line");
        sink = id;
        have_sink = true;
      }
      continue;
    }

    Edge e;
    try {
      size_t pos = 0;
      e.u = std::stoi(first, &pos);
      if (pos != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      syntax_error(lineno, "expected 'u v w' edge line, got '" + first + "'");
    }
    std::string vtok, wtok;
    if (!(ls >> vtok >> wtok)) syntax_error(lineno, "expected 'u v w' edge line");
    try {
      size_t pos = 0;
      e.v = std::stoi(vtok, &pos);
      if (pos != vtok.size()) throw std::invalid_argument(vtok);
      e.w = std::stod(wtok, &pos);
      if (pos != wtok.size()) throw std::invalid_argument(wtok);
    } catch (const std::exception&) {
      syntax_error(lineno, "bad edge line tokens '" + vtok + " " + wtok + "'");
    }
    std::string extra;
    if (ls >> extra) syntax_error(lineno, "trailing token '" + extra + "'");
    edges.push_back(e);
  }

  if (n < 0) fail(ErrorCode::SyntaxError, "empty document");
  if (!have_source || !have_sink)
    fail(ErrorCode::SyntaxError, "missing source/sink line");
  return WeightedGraph::build(n, std::move(edges), source, sink);
}

std::string serialize_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out << g.n() << "\n";
  for (const auto& e : g.edges())
    out << e.u << " " << e.v << " " << fmt_weight(e.w) << "\n";
  out << "source " << g.source() << "\n";
  out << "sink " << g.sink() << "\n";
  return out.str();
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph_file(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << serialize_graph(g);
}

}  // namespace ohmnet
