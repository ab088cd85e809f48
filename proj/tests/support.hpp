#pragma once

// Shared test helpers: tiny graph builders and independent brute-force
// oracles. The oracles here deliberately avoid the library's executors
// and reference solvers.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "pagestream/graph.hpp"
#include "pagestream/types.hpp"

namespace testsupport {

using pagestream::CsrGraph;
using pagestream::Edge;
using pagestream::EdgeList;
using pagestream::kUnreached;
using pagestream::PageSet;
using pagestream::Value;
using pagestream::VertexId;
using pagestream::Weight;

inline EdgeList make_graph(VertexId n, std::vector<Edge> edges, std::vector<Weight> weights = {}) {
  EdgeList el;
  el.num_vertices = n;
  el.edges = std::move(edges);
  el.weights = std::move(weights);
  return el;
}

using EdgeTuple = std::tuple<VertexId, VertexId, Weight>;

inline std::vector<EdgeTuple> multiset_of(const EdgeList& el) {
  std::vector<EdgeTuple> out;
  for (std::size_t i = 0; i < el.edges.size(); ++i)
    out.emplace_back(el.edges[i].src, el.edges[i].dst, el.weighted() ? el.weights[i] : 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<EdgeTuple> multiset_of(const CsrGraph& g) {
  std::vector<EdgeTuple> out;
  for (VertexId u = 0; u < g.num_vertices; ++u)
    for (std::uint64_t k = g.out_offsets[u]; k < g.out_offsets[u + 1]; ++k)
      out.emplace_back(u, g.out_neighbors[k], g.weighted() ? g.out_weights[k] : 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<EdgeTuple> multiset_of(const PageSet& set) {
  std::vector<EdgeTuple> out;
  for (const auto& page : set.pages) {
    for (VertexId local = 0; local < page.range(); ++local)
      for (std::uint32_t k = page.in_offsets[local]; k < page.in_offsets[local + 1]; ++k)
        out.emplace_back(page.in_sources[k], page.vertex_begin + local,
                         set.weighted ? page.in_weights[k] : 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Bellman-Ford style sweep to fixpoint: the simplest possible exact
// solver for all three monotone programs.
inline std::vector<Value> brute_force_fixpoint(const EdgeList& el, pagestream::AlgoKind kind,
                                               VertexId source) {
  std::vector<Value> val(el.num_vertices);
  for (VertexId v = 0; v < el.num_vertices; ++v) {
    if (kind == pagestream::AlgoKind::Cc) val[v] = v;
    else val[v] = (v == source) ? 0 : kUnreached;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < el.edges.size(); ++i) {
      const Edge& e = el.edges[i];
      if (val[e.src] == kUnreached) continue;
      std::uint64_t cand;
      switch (kind) {
        case pagestream::AlgoKind::Bfs: cand = std::uint64_t(val[e.src]) + 1; break;
        case pagestream::AlgoKind::Cc: cand = val[e.src]; break;
        case pagestream::AlgoKind::Sssp:
          cand = std::uint64_t(val[e.src]) + (el.weighted() ? el.weights[i] : 1);
          break;
        default: cand = kUnreached;
      }
      if (cand < val[e.dst]) {
        val[e.dst] = static_cast<Value>(cand);
        changed = true;
      }
    }
  }
  return val;
}

// Exhaustive simple-path enumeration; only for very small graphs.
inline std::vector<Value> brute_force_sssp_paths(const EdgeList& el, VertexId source) {
  std::vector<Value> best(el.num_vertices, kUnreached);
  best[source] = 0;
  std::vector<std::uint8_t> on_path(el.num_vertices, 0);
  auto dfs = [&](auto&& self, VertexId u, std::uint64_t dist) -> void {
    for (std::size_t i = 0; i < el.edges.size(); ++i) {
      if (el.edges[i].src != u) continue;
      const VertexId v = el.edges[i].dst;
      if (on_path[v]) continue;
      const std::uint64_t d = dist + (el.weighted() ? el.weights[i] : 1);
      if (d < best[v]) best[v] = static_cast<Value>(d);
      on_path[v] = 1;
      self(self, v, d);
      on_path[v] = 0;
    }
  };
  on_path[source] = 1;
  dfs(dfs, source, 0);
  return best;
}

inline EdgeList random_edge_list(std::mt19937_64& rng, VertexId max_vertices,
                                 std::size_t max_edges, bool weighted) {
  EdgeList el;
  el.num_vertices = static_cast<VertexId>(rng() % max_vertices + 1);
  const std::size_t m = rng() % (max_edges + 1);
  for (std::size_t i = 0; i < m; ++i) {
    el.edges.push_back({static_cast<VertexId>(rng() % el.num_vertices),
                        static_cast<VertexId>(rng() % el.num_vertices)});
    if (weighted) el.weights.push_back(static_cast<Weight>(rng() % 16 + 1));
  }
  return el;
}

}  // namespace testsupport
