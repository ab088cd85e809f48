#pragma once

#include <span>
#include <string>
#include <vector>

#include "pagestream/graph.hpp"
#include "pagestream/types.hpp"

namespace pagestream {

// Single-threaded exact solvers, independent of the engine's executors:
// BFS by level queue, CC by synchronous label propagation to fixpoint,
// SSSP by priority-first search. CC expects a symmetrized graph.
std::vector<Value> reference_solve(const CsrGraph& graph, AlgoKind algorithm, VertexId source);

struct VerifyMismatch {
  VertexId vertex;
  Value got;
  Value expected;
};

struct VerifyReport {
  bool pass = false;
  std::uint64_t mismatch_count = 0;
  std::vector<VerifyMismatch> first_mismatches;  // at most 10
  std::string to_string() const;
};

// Throws ContractError on length mismatch.
VerifyReport verify(std::span<const Value> values, std::span<const Value> oracle);

}  // namespace pagestream
