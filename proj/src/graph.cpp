#include "pagestream/graph.hpp"

#include <string>

#include "pagestream/errors.hpp"

namespace pagestream {

void EdgeList::validate() const {
  if (!weights.empty() && weights.size() != edges.size())
    throw InputError("edge list: weight array length " + std::to_string(weights.size()) +
                     " does not match edge count " + std::to_string(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src >= num_vertices || e.dst >= num_vertices)
      throw InputError("edge " + std::to_string(i) + " (" + std::to_string(e.src) + "," +
                       std::to_string(e.dst) + ") has id >= num_vertices " +
                       std::to_string(num_vertices));
    if (!weights.empty() && weights[i] < 1)
      throw InputError("edge " + std::to_string(i) + " has weight < 1");
  }
}

std::uint64_t PageSet::num_edges() const {
  std::uint64_t n = 0;
  for (const CscPage& p : pages) n += p.edge_count();
  return n;
}

CsrGraph build_csr(const EdgeList& el) {
  el.validate();
  CsrGraph g;
  g.num_vertices = el.num_vertices;
  g.out_offsets.assign(std::size_t(el.num_vertices) + 1, 0);
  for (const Edge& e : el.edges) g.out_offsets[std::size_t(e.src) + 1]++;
  for (std::size_t v = 1; v <= el.num_vertices; ++v) g.out_offsets[v] += g.out_offsets[v - 1];

  g.out_neighbors.resize(el.edges.size());
  if (el.weighted()) g.out_weights.resize(el.edges.size());
  std::vector<std::uint64_t> cursor(g.out_offsets.begin(), g.out_offsets.end() - 1);
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    std::uint64_t at = cursor[e.src]++;
    g.out_neighbors[at] = e.dst;
    if (el.weighted()) g.out_weights[at] = el.weights[i];
  }
  return g;
}

PageSet build_csc_pages(const EdgeList& el, VertexId page_vertex_capacity) {
  if (page_vertex_capacity < 1)
    throw ConfigError("page_vertex_capacity must be >= 1");
  el.validate();

  PageSet set;
  set.num_vertices = el.num_vertices;
  set.page_vertex_capacity = page_vertex_capacity;
  set.weighted = el.weighted();

  const VertexId n = el.num_vertices;
  // Transpose once: per-destination in-degrees, then bucket by destination.
  std::vector<std::uint64_t> in_offsets(std::size_t(n) + 1, 0);
  for (const Edge& e : el.edges) in_offsets[std::size_t(e.dst) + 1]++;
  for (std::size_t v = 1; v <= n; ++v) in_offsets[v] += in_offsets[v - 1];
  std::vector<VertexId> in_sources(el.edges.size());
  std::vector<Weight> in_weights(el.weighted() ? el.edges.size() : 0);
  std::vector<std::uint64_t> cursor(in_offsets.begin(), in_offsets.end() - 1);
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    std::uint64_t at = cursor[e.dst]++;
    in_sources[at] = e.src;
    if (el.weighted()) in_weights[at] = el.weights[i];
  }

  const std::uint64_t page_count =
      (std::uint64_t(n) + page_vertex_capacity - 1) / page_vertex_capacity;
  set.pages.reserve(page_count);
  for (std::uint64_t p = 0; p < page_count; ++p) {
    CscPage page;
    page.vertex_begin = static_cast<VertexId>(p * page_vertex_capacity);
    page.vertex_end =
        static_cast<VertexId>(std::min<std::uint64_t>((p + 1) * std::uint64_t(page_vertex_capacity), n));
    const std::uint64_t lo = in_offsets[page.vertex_begin];
    const std::uint64_t hi = in_offsets[page.vertex_end];
    page.in_offsets.resize(std::size_t(page.range()) + 1);
    for (VertexId v = 0; v <= page.range(); ++v)
      page.in_offsets[v] = static_cast<std::uint32_t>(in_offsets[page.vertex_begin + v] - lo);
    page.in_sources.assign(in_sources.begin() + lo, in_sources.begin() + hi);
    if (el.weighted())
      page.in_weights.assign(in_weights.begin() + lo, in_weights.begin() + hi);
    set.pages.push_back(std::move(page));
  }
  return set;
}

std::uint64_t page_bytes(const CscPage& page, bool weighted, std::size_t entry_bytes) {
  std::uint64_t entries = page.in_offsets.size() + page.in_sources.size();
  if (weighted) entries += page.in_sources.size();
  return entries * entry_bytes;
}

EdgeList symmetrize(const EdgeList& el) {
  el.validate();
  EdgeList out;
  out.num_vertices = el.num_vertices;
  out.edges.reserve(el.edges.size() * 2);
  if (el.weighted()) out.weights.reserve(el.edges.size() * 2);
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    out.edges.push_back(e);
    out.edges.push_back({e.dst, e.src});
    if (el.weighted()) {
      out.weights.push_back(el.weights[i]);
      out.weights.push_back(el.weights[i]);
    }
  }
  return out;
}

}  // namespace pagestream
