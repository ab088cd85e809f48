#pragma once

#include <cstdint>
#include <vector>

#include "pagestream/types.hpp"

namespace pagestream {

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  bool operator==(const Edge&) const = default;
};

// Edge list with an optional parallel weight array (empty = unweighted).
// Duplicates and self-loops are kept as-is; min-combine semantics make
// them harmless and the RMAT generator emits them.
struct EdgeList {
  VertexId num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<Weight> weights;

  bool weighted() const { return !weights.empty(); }
  std::uint64_t num_edges() const { return edges.size(); }
  void validate() const;  // throws InputError
};

// Host-side outgoing adjacency used by the sparse push stage.
struct CsrGraph {
  VertexId num_vertices = 0;
  std::vector<std::uint64_t> out_offsets;  // length |V|+1, out_offsets[0] == 0
  std::vector<VertexId> out_neighbors;
  std::vector<Weight> out_weights;  // parallel, empty when unweighted

  bool weighted() const { return !out_weights.empty(); }
  std::uint64_t num_edges() const { return out_neighbors.size(); }
  std::uint64_t out_degree(VertexId u) const {
    return out_offsets[u + 1] - out_offsets[u];
  }
};

// A contiguous destination-vertex range with all of its incoming edges.
// The unit of transfer and scheduling. Offsets are local to the range;
// no destination index array is stored.
struct CscPage {
  VertexId vertex_begin = 0;
  VertexId vertex_end = 0;  // half-open
  std::vector<std::uint32_t> in_offsets;  // length range()+1
  std::vector<VertexId> in_sources;
  std::vector<Weight> in_weights;  // parallel, empty when unweighted

  VertexId range() const { return vertex_end - vertex_begin; }
  std::uint64_t edge_count() const { return in_sources.size(); }
};

struct PageSet {
  VertexId num_vertices = 0;
  VertexId page_vertex_capacity = 0;
  bool weighted = false;
  std::vector<CscPage> pages;

  std::uint64_t num_edges() const;
  std::uint32_t page_count() const { return static_cast<std::uint32_t>(pages.size()); }
};

// Counting sort by source; input edge multiset is preserved exactly.
CsrGraph build_csr(const EdgeList& edges);

// Cut the CSC into ceil(|V|/capacity) pages; page p covers
// [p*cap, min((p+1)*cap, |V|)). Within a page, in-edges are grouped by
// destination in ascending destination order.
PageSet build_csc_pages(const EdgeList& edges, VertexId page_vertex_capacity);

// Serialized size of one page under the flat layout rule:
// (offset entries + source entries [+ weight entries]) * entry width.
std::uint64_t page_bytes(const CscPage& page, bool weighted,
                         std::size_t entry_bytes = kEntryBytes);

// Append the reverse of every edge; weights are copied. No dedup.
EdgeList symmetrize(const EdgeList& edges);

}  // namespace pagestream
