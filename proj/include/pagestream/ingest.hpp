#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pagestream/graph.hpp"

namespace pagestream {

// Recursive-quadrant random graph parameters. scale k gives |V| = 2^k and
// |E| = 2^k * edge_factor directed edges.
struct RmatParams {
  int scale = 12;
  std::uint64_t edge_factor = 16;
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// "src dst" or "src dst w" per line, '#' comments and blank lines skipped.
// num_vertices becomes 1 + the largest id seen.
EdgeList parse_edge_list(std::istream& in, bool weighted);

EdgeList generate_rmat(const RmatParams& params);

// Independent uniform integer weights in [lo, hi], reproducible per seed.
EdgeList assign_weights(EdgeList edges, std::uint64_t seed, Weight lo, Weight hi);

// On-disk format: header {magic "SRPH", version u8 = 1, flags u8 (bit0 =
// weighted), 2 pad bytes, num_vertices u64 LE, num_edges u64 LE} followed
// by num_edges records of (src u32, dst u32 [, w u32]) little-endian.
struct GraphFileHeader {
  static constexpr char kMagic[4] = {'S', 'R', 'P', 'H'};
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::uint8_t kFlagWeighted = 0x01;
};

void save_binary(const EdgeList& graph, const std::string& path);
EdgeList load_binary(const std::string& path);

}  // namespace pagestream
