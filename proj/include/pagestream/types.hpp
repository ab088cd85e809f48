#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace pagestream {

using VertexId = std::uint32_t;
using Value    = std::uint32_t;
using Weight   = std::uint32_t;

// Unreached/infinity sentinel. combine() saturates here instead of wrapping.
inline constexpr Value kUnreached = std::numeric_limits<Value>::max();

// Serialized width of ids, offsets and weights (32-bit ids cover the
// graph scales this engine targets).
inline constexpr std::size_t kEntryBytes = 4;

enum class AlgoKind { Bfs, Cc, Sssp };

inline const char* to_string(AlgoKind k) {
  switch (k) {
    case AlgoKind::Bfs: return "bfs";
    case AlgoKind::Cc: return "cc";
    case AlgoKind::Sssp: return "sssp";
  }
  return "?";
}

}  // namespace pagestream
