#include "pagestream/programs.hpp"

#include <string>

#include "pagestream/errors.hpp"

namespace pagestream {

VertexProgram make_bfs(VertexId source, VertexId num_vertices) {
  if (source >= num_vertices)
    throw ConfigError("bfs source " + std::to_string(source) + " out of range [0, " +
                      std::to_string(num_vertices) + ")");
  return VertexProgram{AlgoKind::Bfs, source};
}

VertexProgram make_cc() { return VertexProgram{AlgoKind::Cc, 0}; }

VertexProgram make_sssp(VertexId source, VertexId num_vertices, bool graph_weighted) {
  if (source >= num_vertices)
    throw ConfigError("sssp source " + std::to_string(source) + " out of range [0, " +
                      std::to_string(num_vertices) + ")");
  if (!graph_weighted)
    throw ConfigError("sssp requires a weighted graph");
  return VertexProgram{AlgoKind::Sssp, source};
}

}  // namespace pagestream
