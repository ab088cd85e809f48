#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "pagestream/types.hpp"

namespace pagestream {

// Monotone min-combine vertex program shared by the push and pull
// executors. better() is strictly-less; combine() saturates at the
// unreached sentinel so it absorbs on identity.
struct VertexProgram {
  AlgoKind kind = AlgoKind::Bfs;
  VertexId source = 0;  // unused for CC

  static constexpr Value identity = kUnreached;

  Value init(VertexId v) const {
    switch (kind) {
      case AlgoKind::Bfs:
      case AlgoKind::Sssp:
        return v == source ? 0 : kUnreached;
      case AlgoKind::Cc:
        return v;
    }
    return kUnreached;
  }

  Value combine(Value a, Weight w) const {
    if (a == kUnreached) return kUnreached;
    switch (kind) {
      case AlgoKind::Bfs: {
        return a + 1 == 0 ? kUnreached : a + 1;  // a < kUnreached, so a+1 never wraps
      }
      case AlgoKind::Cc:
        return a;
      case AlgoKind::Sssp: {
        const Value s = a + w;
        return s < a ? kUnreached : s;  // saturate on wrap
      }
    }
    return kUnreached;
  }

  static bool better(Value a, Value b) { return a < b; }

  bool uses_weights() const { return kind == AlgoKind::Sssp; }
};

VertexProgram make_bfs(VertexId source, VertexId num_vertices);
VertexProgram make_cc();
VertexProgram make_sssp(VertexId source, VertexId num_vertices, bool graph_weighted);

// Dense per-vertex values under a linearizable minimum-combine write
// contract: concurrent proposals leave the minimum in place and the
// proposal that achieved it observes the displaced value.
class VertexValues {
 public:
  VertexValues(VertexId n, const VertexProgram& program) : vals_(n) {
    for (VertexId v = 0; v < n; ++v)
      vals_[v].store(program.init(v), std::memory_order_relaxed);
  }

  VertexId size() const { return static_cast<VertexId>(vals_.size()); }

  Value load(VertexId v) const { return vals_[v].load(std::memory_order_relaxed); }

  // Returns the displaced value when the proposal strictly improved the
  // stored one, nullopt otherwise.
  std::optional<Value> improve(VertexId v, Value candidate) {
    Value cur = vals_[v].load(std::memory_order_relaxed);
    while (VertexProgram::better(candidate, cur)) {
      if (vals_[v].compare_exchange_weak(cur, candidate, std::memory_order_acq_rel,
                                         std::memory_order_relaxed))
        return cur;
    }
    return std::nullopt;
  }

  std::vector<Value> snapshot() const {
    std::vector<Value> out(vals_.size());
    for (std::size_t v = 0; v < vals_.size(); ++v)
      out[v] = vals_[v].load(std::memory_order_relaxed);
    return out;
  }

 private:
  std::vector<std::atomic<Value>> vals_;
};

}  // namespace pagestream
