#include "pagestream/bench.hpp"

#include <charconv>
#include <cstdio>
#include <future>
#include <istream>
#include <sstream>
#include <string_view>

#include "pagestream/errors.hpp"
#include "pagestream/reference.hpp"

namespace pagestream {

namespace {

std::string trim(std::string_view sv) {
  while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
  while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
    sv.remove_suffix(1);
  return std::string(sv);
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("spec key '" + key + "': bad integer '" + value + "'");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("spec key '" + key + "': bad number '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("spec key '" + key + "': bad flag '" + value + "'");
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

AlgoKind parse_algo(const std::string& name) {
  if (name == "bfs") return AlgoKind::Bfs;
  if (name == "cc") return AlgoKind::Cc;
  if (name == "sssp") return AlgoKind::Sssp;
  throw ConfigError("unknown algorithm '" + name + "'");
}

PredictorMode parse_predictor(const std::string& name) {
  if (name == "off") return PredictorMode::Off;
  if (name == "strong") return PredictorMode::Strong;
  if (name == "weak") return PredictorMode::Weak;
  throw ConfigError("unknown predictor mode '" + name + "'");
}

std::uint64_t derive_cell_seed(std::uint64_t base, std::uint64_t cell) {
  return mix64(base ^ mix64(cell + 1));
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  int default_mrt = 2;
  int default_reps = 3;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("spec line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));

    if (key == "dataset") {
      if (value == "rmat") spec.use_rmat = true;
      else if (value == "file") spec.use_rmat = false;
      else throw ConfigError("spec: dataset must be rmat or file");
    } else if (key == "file") {
      spec.graph_path = value;
    } else if (key == "rmat.scale") {
      spec.rmat.scale = static_cast<int>(to_u64(key, value));
    } else if (key == "rmat.edge_factor") {
      spec.rmat.edge_factor = to_u64(key, value);
    } else if (key == "rmat.seed") {
      spec.rmat.seed = to_u64(key, value);
    } else if (key == "rmat.a") {
      spec.rmat.a = to_double(key, value);
    } else if (key == "rmat.b") {
      spec.rmat.b = to_double(key, value);
    } else if (key == "rmat.c") {
      spec.rmat.c = to_double(key, value);
    } else if (key == "rmat.d") {
      spec.rmat.d = to_double(key, value);
    } else if (key == "weighted") {
      spec.weighted = to_bool(key, value);
    } else if (key == "wmin") {
      spec.weight_min = static_cast<Weight>(to_u64(key, value));
    } else if (key == "wmax") {
      spec.weight_max = static_cast<Weight>(to_u64(key, value));
    } else if (key == "algo") {
      spec.algo = parse_algo(value);
    } else if (key == "source") {
      spec.source = static_cast<VertexId>(to_u64(key, value));
    } else if (key == "page_cap") {
      spec.page_cap = static_cast<VertexId>(to_u64(key, value));
    } else if (key == "density") {
      spec.density_threshold_fraction = to_double(key, value);
    } else if (key == "clock") {
      if (value == "virtual") spec.clock = ClockMode::Virtual;
      else if (value == "wall") spec.clock = ClockMode::Wall;
      else throw ConfigError("spec: clock must be virtual or wall");
    } else if (key == "repetitions") {
      spec.repetitions = static_cast<std::uint32_t>(to_u64(key, value));
    } else if (key == "seed") {
      spec.seed = to_u64(key, value);
    } else if (key == "mrt") {
      default_mrt = static_cast<int>(to_u64(key, value));
    } else if (key == "db_reps") {
      default_reps = static_cast<int>(to_u64(key, value));
    } else if (key == "cell") {
      const std::vector<std::string> f = split_ws(value);
      if (f.size() != 4)
        throw ConfigError("spec line " + std::to_string(line_no) +
                          ": cell needs <mode> <predictor> <workers> <window>");
      ExperimentCell cell;
      cell.mode.kind = parse_schedule_mode(f[0]);
      cell.mode.max_reentry_times = default_mrt;
      cell.mode.buffer_repetitions = default_reps;
      cell.predictor = parse_predictor(f[1]);
      cell.workers = static_cast<int>(to_u64("cell.workers", f[2]));
      cell.window = static_cast<std::uint32_t>(to_u64("cell.window", f[3]));
      spec.cells.push_back(cell);
    } else {
      throw ConfigError("spec line " + std::to_string(line_no) + ": unknown key '" + key +
                        "'");
    }
  }
  if (spec.cells.empty()) throw ConfigError("spec defines no cells");
  if (spec.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  return spec;
}

MatrixResult run_matrix(const ExperimentSpec& spec, bool parallel_cells) {
  EdgeList edges = spec.use_rmat ? generate_rmat(spec.rmat) : load_binary(spec.graph_path);
  if (spec.weighted && !edges.weighted())
    edges = assign_weights(std::move(edges), mix64(spec.seed ^ 0x77), spec.weight_min,
                           spec.weight_max);
  if (spec.algo == AlgoKind::Cc) edges = symmetrize(edges);
  if (spec.algo == AlgoKind::Sssp && !edges.weighted())
    throw ConfigError("sssp experiment needs weighted = true or a weighted graph file");

  const VertexId cap = resolve_page_capacity(spec.page_cap, edges.num_vertices);
  const CsrGraph csr = build_csr(edges);
  const PageSet pages = build_csc_pages(edges, cap);
  const std::vector<Value> oracle = reference_solve(csr, spec.algo, spec.source);

  struct Row {
    std::string text;
    bool verified;
  };
  const std::size_t total = spec.cells.size() * spec.repetitions;

  auto run_cell = [&](std::size_t flat) -> Row {
    const std::size_t ci = flat / spec.repetitions;
    const ExperimentCell& cell = spec.cells[ci];

    EngineConfig config;
    config.page_vertex_capacity = cap;
    config.density_threshold_fraction = spec.density_threshold_fraction;
    config.predictor = cell.predictor;
    config.schedule = cell.mode;
    config.window_capacity = cell.window;
    config.transfer.worker_count = cell.workers;
    config.clock = spec.clock;
    config.seed = derive_cell_seed(spec.seed, ci);

    VertexProgram program;
    switch (spec.algo) {
      case AlgoKind::Bfs: program = make_bfs(spec.source, edges.num_vertices); break;
      case AlgoKind::Cc: program = make_cc(); break;
      case AlgoKind::Sssp:
        program = make_sssp(spec.source, edges.num_vertices, edges.weighted());
        break;
    }

    RunResult result = run(csr, pages, program, config);
    const VerifyReport vr = verify(result.values, oracle);
    const MetricsReport& m = result.metrics;

    const double wall_ms = spec.clock == ClockMode::Wall ? m.wall_seconds * 1e3 : 0.0;
    const double gteps = spec.clock == ClockMode::Wall
                             ? (m.wall_seconds > 0 ? double(m.edges_read) / m.wall_seconds / 1e9
                                                   : 0.0)
                             : (m.virtual_makespan > 0
                                    ? double(m.edges_read) / m.virtual_makespan
                                    : 0.0);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f,%.3f,%.6g", m.virtual_makespan, wall_ms, gteps);

    std::string row;
    row += std::string(to_string(spec.algo)) + ',';
    row += std::string(to_string(cell.mode.kind)) + ',';
    row += std::string(to_string(cell.predictor)) + ',';
    row += std::to_string(cell.workers) + ',';
    row += std::to_string(cell.window) + ',';
    row += std::to_string(config.seed) + ',';
    row += std::to_string(m.passes) + ',';
    row += std::to_string(m.sparse_passes) + ',';
    row += std::to_string(m.dense_passes) + ',';
    row += std::to_string(m.recovery_passes) + ',';
    row += std::to_string(m.pages_transferred) + ',';
    row += std::to_string(m.bytes_transferred) + ',';
    row += std::to_string(m.update_attempts) + ',';
    row += std::to_string(m.valid_updates) + ',';
    row += std::to_string(m.skipped_vertices) + ',';
    row += std::to_string(m.edges_read) + ',';
    row += buf;
    row += ',';
    if (m.prediction_accuracy)
      row += std::to_string(*m.prediction_accuracy);
    else
      row += "na";
    row += vr.pass ? ",pass" : ",FAIL";
    return Row{std::move(row), vr.pass};
  };

  std::vector<Row> rows(total);
  if (parallel_cells) {
    std::vector<std::future<Row>> futures;
    futures.reserve(total);
    for (std::size_t i = 0; i < total; ++i)
      futures.push_back(std::async(std::launch::async, run_cell, i));
    for (std::size_t i = 0; i < total; ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < total; ++i) rows[i] = run_cell(i);
  }

  MatrixResult out;
  out.csv =
      "algo,mode,predictor,workers,window,seed,passes,sparse_passes,dense_passes,"
      "recovery_passes,pages_transferred,bytes_transferred,update_attempts,valid_updates,"
      "skipped,edges_read,makespan,wall_ms,gteps,accuracy,verified\n";
  for (const Row& r : rows) {
    out.csv += r.text;
    out.csv += '\n';
    if (!r.verified) out.all_verified = false;
  }
  return out;
}

}  // namespace pagestream
