#include "pagestream/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pagestream/errors.hpp"

namespace pagestream {

namespace {

// 53-bit uniform double in [0, 1).
double unit_draw(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

bool parse_u32(std::string_view tok, std::uint32_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

void put_u32(std::string& buf, std::uint32_t v) {
  buf.push_back(char(v & 0xff));
  buf.push_back(char((v >> 8) & 0xff));
  buf.push_back(char((v >> 16) & 0xff));
  buf.push_back(char((v >> 24) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void RmatParams::validate() const {
  if (scale < 1 || scale > 30)
    throw ConfigError("rmat scale must be in [1, 30], got " + std::to_string(scale));
  if (edge_factor < 1) throw ConfigError("rmat edge_factor must be >= 1");
  if (a < 0 || b < 0 || c < 0 || d < 0)
    throw ConfigError("rmat quadrant probabilities must be non-negative");
  if (std::fabs(a + b + c + d - 1.0) > 1e-9)
    throw ConfigError("rmat quadrant probabilities must sum to 1");
}

EdgeList parse_edge_list(std::istream& in, bool weighted) {
  EdgeList el;
  VertexId max_id = 0;
  bool any = false;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t'))
      sv.remove_suffix(1);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;

    std::uint32_t fields[3];
    int nfields = 0;
    std::size_t pos = 0;
    while (pos < sv.size()) {
      std::size_t end = sv.find_first_of(" \t", pos);
      if (end == std::string_view::npos) end = sv.size();
      std::string_view tok = sv.substr(pos, end - pos);
      if (!tok.empty()) {
        if (nfields == 3)
          throw ParseError("line " + std::to_string(line_no) + ": too many fields");
        if (!parse_u32(tok, fields[nfields]))
          throw ParseError("line " + std::to_string(line_no) + ": bad token '" +
                           std::string(tok) + "'");
        ++nfields;
      }
      pos = end + 1;
    }
    const int expected = weighted ? 3 : 2;
    if (nfields != expected)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected) + " fields, got " + std::to_string(nfields));
    if (weighted && fields[2] < 1)
      throw ParseError("line " + std::to_string(line_no) + ": weight must be >= 1");

    el.edges.push_back({fields[0], fields[1]});
    if (weighted) el.weights.push_back(fields[2]);
    max_id = std::max({max_id, fields[0], fields[1]});
    any = true;
  }
  el.num_vertices = any ? max_id + 1 : 0;
  return el;
}

EdgeList generate_rmat(const RmatParams& p) {
  p.validate();
  const VertexId n = VertexId(1) << p.scale;
  const std::uint64_t m = std::uint64_t(n) * p.edge_factor;
  std::mt19937_64 rng(p.seed);

  EdgeList el;
  el.num_vertices = n;
  el.edges.reserve(m);
  const double ab = p.a + p.b;
  const double abc = ab + p.c;
  for (std::uint64_t e = 0; e < m; ++e) {
    VertexId src = 0, dst = 0;
    for (int bit = p.scale - 1; bit >= 0; --bit) {
      const double u = unit_draw(rng);
      if (u < p.a) {
        // top-left quadrant: no bits set
      } else if (u < ab) {
        dst |= VertexId(1) << bit;
      } else if (u < abc) {
        src |= VertexId(1) << bit;
      } else {
        src |= VertexId(1) << bit;
        dst |= VertexId(1) << bit;
      }
    }
    el.edges.push_back({src, dst});
  }
  return el;
}

EdgeList assign_weights(EdgeList el, std::uint64_t seed, Weight lo, Weight hi) {
  if (lo < 1)
    throw ConfigError("minimum weight must be >= 1 (non-positive weights break SSSP)");
  if (lo > hi) throw ConfigError("weight range is empty: lo > hi");
  std::mt19937_64 rng(seed);
  const std::uint64_t span = std::uint64_t(hi) - lo + 1;
  el.weights.resize(el.edges.size());
  for (Weight& w : el.weights) w = static_cast<Weight>(lo + rng() % span);
  return el;
}

void save_binary(const EdgeList& el, const std::string& path) {
  el.validate();
  std::string buf;
  buf.reserve(24 + el.edges.size() * (el.weighted() ? 12 : 8));
  buf.append(GraphFileHeader::kMagic, 4);
  buf.push_back(char(GraphFileHeader::kVersion));
  buf.push_back(char(el.weighted() ? GraphFileHeader::kFlagWeighted : 0));
  buf.push_back(0);
  buf.push_back(0);
  put_u64(buf, el.num_vertices);
  put_u64(buf, el.edges.size());
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    put_u32(buf, el.edges[i].src);
    put_u32(buf, el.edges[i].dst);
    if (el.weighted()) put_u32(buf, el.weights[i]);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw FormatError("short write to '" + path + "'");
}

EdgeList load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());

  if (buf.size() < 24)
    throw FormatError("'" + path + "': header needs 24 bytes, file has " +
                      std::to_string(buf.size()));
  if (std::memcmp(p, GraphFileHeader::kMagic, 4) != 0)
    throw FormatError("'" + path + "': bad magic");
  if (p[4] != GraphFileHeader::kVersion)
    throw FormatError("'" + path + "': unsupported version " + std::to_string(p[4]));
  const bool weighted = (p[5] & GraphFileHeader::kFlagWeighted) != 0;
  const std::uint64_t num_vertices = get_u64(p + 8);
  const std::uint64_t num_edges = get_u64(p + 16);
  if (num_vertices > std::uint64_t(kUnreached))
    throw FormatError("'" + path + "': vertex count exceeds 32-bit id range");

  const std::uint64_t record = weighted ? 12 : 8;
  const std::uint64_t expected = 24 + num_edges * record;
  if (buf.size() != expected)
    throw FormatError("'" + path + "': expected " + std::to_string(expected) +
                      " bytes, file has " + std::to_string(buf.size()));

  EdgeList el;
  el.num_vertices = static_cast<VertexId>(num_vertices);
  el.edges.resize(num_edges);
  if (weighted) el.weights.resize(num_edges);
  const unsigned char* q = p + 24;
  for (std::uint64_t i = 0; i < num_edges; ++i) {
    el.edges[i].src = get_u32(q);
    el.edges[i].dst = get_u32(q + 4);
    if (weighted) el.weights[i] = get_u32(q + 8);
    q += record;
  }
  try {
    el.validate();
  } catch (const InputError& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
  return el;
}

}  // namespace pagestream
