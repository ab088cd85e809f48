#include "pagestream/reference.hpp"

#include <queue>
#include <string>
#include <utility>

#include "pagestream/errors.hpp"

namespace pagestream {

namespace {

std::vector<Value> bfs_levels(const CsrGraph& g, VertexId source) {
  std::vector<Value> depth(g.num_vertices, kUnreached);
  depth[source] = 0;
  std::queue<VertexId> q;
  q.push(source);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (std::uint64_t k = g.out_offsets[u]; k < g.out_offsets[u + 1]; ++k) {
      const VertexId v = g.out_neighbors[k];
      if (depth[v] == kUnreached) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
    }
  }
  return depth;
}

std::vector<Value> label_propagation_fixpoint(const CsrGraph& g) {
  std::vector<Value> labels(g.num_vertices);
  for (VertexId v = 0; v < g.num_vertices; ++v) labels[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Value> next = labels;
    for (VertexId u = 0; u < g.num_vertices; ++u) {
      for (std::uint64_t k = g.out_offsets[u]; k < g.out_offsets[u + 1]; ++k) {
        const VertexId v = g.out_neighbors[k];
        if (labels[u] < next[v]) {
          next[v] = labels[u];
          changed = true;
        }
      }
    }
    labels.swap(next);
  }
  return labels;
}

std::vector<Value> dijkstra(const CsrGraph& g, VertexId source) {
  std::vector<Value> dist(g.num_vertices, kUnreached);
  dist[source] = 0;
  using Item = std::pair<Value, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (std::uint64_t k = g.out_offsets[u]; k < g.out_offsets[u + 1]; ++k) {
      const VertexId v = g.out_neighbors[k];
      const std::uint64_t cand = std::uint64_t(d) + g.out_weights[k];
      if (cand < dist[v]) {
        dist[v] = static_cast<Value>(cand);
        heap.push({dist[v], v});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<Value> reference_solve(const CsrGraph& graph, AlgoKind algorithm, VertexId source) {
  switch (algorithm) {
    case AlgoKind::Bfs:
      if (source >= graph.num_vertices) throw ConfigError("source out of range");
      return bfs_levels(graph, source);
    case AlgoKind::Cc:
      return label_propagation_fixpoint(graph);
    case AlgoKind::Sssp:
      if (source >= graph.num_vertices) throw ConfigError("source out of range");
      if (!graph.weighted()) throw ConfigError("sssp oracle requires weights");
      return dijkstra(graph, source);
  }
  throw ConfigError("unknown algorithm");
}

std::string VerifyReport::to_string() const {
  if (pass) return "verify: pass";
  std::string s = "verify: FAIL (" + std::to_string(mismatch_count) + " mismatches)";
  for (const VerifyMismatch& m : first_mismatches)
    s += "\n  vertex " + std::to_string(m.vertex) + ": got " + std::to_string(m.got) +
         ", expected " + std::to_string(m.expected);
  return s;
}

VerifyReport verify(std::span<const Value> values, std::span<const Value> oracle) {
  if (values.size() != oracle.size())
    throw ContractError("verify: length mismatch (" + std::to_string(values.size()) + " vs " +
                        std::to_string(oracle.size()) + ")");
  VerifyReport report;
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v] != oracle[v]) {
      ++report.mismatch_count;
      if (report.first_mismatches.size() < 10)
        report.first_mismatches.push_back(
            {static_cast<VertexId>(v), values[v], oracle[v]});
    }
  }
  report.pass = report.mismatch_count == 0;
  return report;
}

}  // namespace pagestream
