#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pagestream/bench.hpp"
#include "pagestream/engine.hpp"
#include "pagestream/errors.hpp"
#include "pagestream/ingest.hpp"
#include "pagestream/metrics.hpp"
#include "pagestream/reference.hpp"

namespace ps = pagestream;

namespace {

struct RunArgs {
  std::string algo = "bfs";
  std::uint32_t source = 0;
  std::string graph;
  std::string mode = "pipelined-fine";
  std::string predict = "off";
  std::uint32_t window = 8;
  int workers = 4;
  std::uint32_t page_cap = 0;
  std::string clock = "virtual";
  std::string exec = "switched";
  double density = 0.05;
  int mrt = 2;
  int db_reps = 3;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string status_csv;
  std::string out_values;
  bool do_verify = false;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ps::Error("cannot open '" + path + "' for writing");
  out << content;
}

int cmd_run(const RunArgs& args) {
  ps::EdgeList edges = ps::load_binary(args.graph);
  const ps::AlgoKind algo = ps::parse_algo(args.algo);
  if (algo == ps::AlgoKind::Cc) edges = ps::symmetrize(edges);

  ps::VertexProgram program;
  switch (algo) {
    case ps::AlgoKind::Bfs: program = ps::make_bfs(args.source, edges.num_vertices); break;
    case ps::AlgoKind::Cc: program = ps::make_cc(); break;
    case ps::AlgoKind::Sssp:
      program = ps::make_sssp(args.source, edges.num_vertices, edges.weighted());
      break;
  }

  ps::EngineConfig config;
  config.page_vertex_capacity = ps::resolve_page_capacity(args.page_cap, edges.num_vertices);
  config.density_threshold_fraction = args.density;
  config.predictor = ps::parse_predictor(args.predict);
  config.schedule.kind = ps::parse_schedule_mode(args.mode);
  config.schedule.max_reentry_times = args.mrt;
  config.schedule.buffer_repetitions = args.db_reps;
  config.window_capacity = args.window;
  config.transfer.worker_count = args.workers;
  config.seed = args.seed;
  config.record_trace = !args.trace_path.empty();
  if (args.clock == "virtual") config.clock = ps::ClockMode::Virtual;
  else if (args.clock == "wall") config.clock = ps::ClockMode::Wall;
  else throw ps::ConfigError("--clock must be virtual or wall");
  if (args.exec == "switched") config.execution = ps::ExecutionPolicy::DensitySwitched;
  else if (args.exec == "sparse") config.execution = ps::ExecutionPolicy::ForceSparse;
  else if (args.exec == "dense") config.execution = ps::ExecutionPolicy::ForceDense;
  else throw ps::ConfigError("--exec must be switched, sparse or dense");

  const ps::CsrGraph csr = ps::build_csr(edges);
  const ps::PageSet pages = ps::build_csc_pages(edges, config.page_vertex_capacity);
  ps::RunResult result = ps::run(csr, pages, program, config);
  const ps::MetricsReport& m = result.metrics;

  std::cout << "algo=" << args.algo << " vertices=" << edges.num_vertices
            << " edges=" << edges.num_edges() << " pages=" << pages.page_count() << "\n";
  std::cout << "passes=" << m.passes << " (sparse=" << m.sparse_passes
            << " dense=" << m.dense_passes << " recovery=" << m.recovery_passes << ")\n";
  std::cout << "pages_transferred=" << m.pages_transferred
            << " bytes_transferred=" << m.bytes_transferred << "\n";
  std::cout << "attempts=" << m.update_attempts << " valid_updates=" << m.valid_updates
            << " skipped=" << m.skipped_vertices << " edges_read=" << m.edges_read << "\n";
  std::cout << "virtual_makespan=" << m.virtual_makespan;
  if (config.clock == ps::ClockMode::Wall)
    std::cout << " wall_seconds=" << m.wall_seconds;
  std::cout << " throughput=" << m.throughput() << "\n";
  if (m.prediction_accuracy)
    std::cout << "prediction_accuracy=" << *m.prediction_accuracy << "\n";

  if (!args.trace_path.empty()) {
    std::ofstream out(args.trace_path, std::ios::trunc);
    if (!out) throw ps::Error("cannot open '" + args.trace_path + "'");
    ps::write_trace_csv(out, result.trace);
  }
  if (!args.status_csv.empty()) {
    std::ofstream out(args.status_csv, std::ios::trunc);
    if (!out) throw ps::Error("cannot open '" + args.status_csv + "'");
    ps::write_status_histogram_csv(out, m);
  }
  if (!args.out_values.empty()) {
    std::ostringstream os;
    for (ps::Value v : result.values) os << v << '\n';
    write_file(args.out_values, os.str());
  }
  if (args.do_verify) {
    const std::vector<ps::Value> oracle = ps::reference_solve(csr, algo, args.source);
    const ps::VerifyReport report = ps::verify(result.values, oracle);
    std::cout << report.to_string() << "\n";
    return report.pass ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded-window streaming graph engine"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a random power-law graph");
  int g_scale = 12;
  std::uint64_t g_ef = 16, g_seed = 0;
  bool g_weighted = false;
  std::uint32_t g_wmin = 1, g_wmax = 64;
  std::string g_out;
  gen->add_option("--scale", g_scale, "log2 of the vertex count")->required();
  gen->add_option("--edge-factor", g_ef, "edges per vertex");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_flag("--weighted", g_weighted, "assign uniform integer weights");
  gen->add_option("--wmin", g_wmin, "minimum weight");
  gen->add_option("--wmax", g_wmax, "maximum weight");
  gen->add_option("-o,--output", g_out, "output graph file")->required();

  // ingest
  auto* ing = app.add_subcommand("ingest", "convert a text edge list to the binary format");
  std::string i_format = "edgelist", i_in, i_out;
  ing->add_option("--format", i_format, "edgelist | edgelist-weighted");
  ing->add_option("input", i_in, "text edge list path")->required();
  ing->add_option("-o,--output", i_out, "output graph file")->required();

  // run
  auto* runc = app.add_subcommand("run", "run one algorithm over one graph");
  RunArgs r;
  runc->add_option("--algo", r.algo, "bfs | cc | sssp")->required();
  runc->add_option("--source", r.source, "source vertex (bfs/sssp)");
  runc->add_option("--graph", r.graph, "binary graph file")->required();
  runc->add_option("--mode", r.mode,
                   "baseline | reentry | double-buffer | pipelined | pipelined-fine");
  runc->add_option("--predict", r.predict, "off | strong | weak");
  runc->add_option("--window", r.window, "window capacity in pages");
  runc->add_option("--workers", r.workers, "kernel worker count");
  runc->add_option("--page-cap", r.page_cap, "destinations per page (0 = auto)");
  runc->add_option("--clock", r.clock, "virtual | wall");
  runc->add_option("--exec", r.exec, "switched | sparse | dense");
  runc->add_option("--density", r.density, "dense-pull threshold fraction of |E|");
  runc->add_option("--mrt", r.mrt, "max reentry times (reentry mode)");
  runc->add_option("--db-reps", r.db_reps, "repetitions per half (double-buffer mode)");
  runc->add_option("--seed", r.seed, "engine seed");
  runc->add_option("--trace", r.trace_path, "write the timing trace CSV here");
  runc->add_option("--status-csv", r.status_csv, "write per-pass status histograms here");
  runc->add_option("--out-values", r.out_values, "write final vertex values here");
  runc->add_flag("--verify", r.do_verify, "check the result against the reference solver");

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment matrix");
  std::string b_spec, b_out;
  bool b_parallel = false;
  bench->add_option("--spec", b_spec, "experiment spec file")->required();
  bench->add_option("-o,--output", b_out, "report CSV path")->required();
  bench->add_flag("--parallel-cells", b_parallel, "run matrix cells concurrently");

  // verify
  auto* ver = app.add_subcommand("verify", "check a saved values file against the reference");
  std::string v_graph, v_algo = "bfs", v_values;
  std::uint32_t v_source = 0;
  ver->add_option("--graph", v_graph, "binary graph file")->required();
  ver->add_option("--algo", v_algo, "bfs | cc | sssp")->required();
  ver->add_option("--source", v_source, "source vertex");
  ver->add_option("--values", v_values, "values file (one value per line)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ps::RmatParams params;
      params.scale = g_scale;
      params.edge_factor = g_ef;
      params.seed = g_seed;
      ps::EdgeList edges = ps::generate_rmat(params);
      if (g_weighted) edges = ps::assign_weights(std::move(edges), g_seed + 1, g_wmin, g_wmax);
      ps::save_binary(edges, g_out);
      std::cout << "wrote " << g_out << ": " << edges.num_vertices << " vertices, "
                << edges.num_edges() << " edges" << (edges.weighted() ? " (weighted)" : "")
                << "\n";
      return 0;
    }
    if (ing->parsed()) {
      bool weighted;
      if (i_format == "edgelist") weighted = false;
      else if (i_format == "edgelist-weighted") weighted = true;
      else throw ps::ConfigError("--format must be edgelist or edgelist-weighted");
      std::ifstream in(i_in);
      if (!in) throw ps::Error("cannot open '" + i_in + "'");
      ps::EdgeList edges = ps::parse_edge_list(in, weighted);
      ps::save_binary(edges, i_out);
      std::cout << "wrote " << i_out << ": " << edges.num_vertices << " vertices, "
                << edges.num_edges() << " edges\n";
      return 0;
    }
    if (runc->parsed()) return cmd_run(r);
    if (bench->parsed()) {
      std::ifstream in(b_spec);
      if (!in) throw ps::Error("cannot open '" + b_spec + "'");
      ps::ExperimentSpec spec = ps::parse_experiment_spec(in);
      ps::MatrixResult result = ps::run_matrix(spec, b_parallel);
      write_file(b_out, result.csv);
      std::cout << "wrote " << b_out << (result.all_verified ? "" : " (verification FAILED)")
                << "\n";
      return result.all_verified ? 0 : 1;
    }
    if (ver->parsed()) {
      ps::EdgeList edges = ps::load_binary(v_graph);
      const ps::AlgoKind algo = ps::parse_algo(v_algo);
      if (algo == ps::AlgoKind::Cc) edges = ps::symmetrize(edges);
      const ps::CsrGraph csr = ps::build_csr(edges);
      std::ifstream in(v_values);
      if (!in) throw ps::Error("cannot open '" + v_values + "'");
      std::vector<ps::Value> values;
      std::uint64_t v = 0;
      while (in >> v) values.push_back(static_cast<ps::Value>(v));
      const std::vector<ps::Value> oracle = ps::reference_solve(csr, algo, v_source);
      const ps::VerifyReport report = ps::verify(values, oracle);
      std::cout << report.to_string() << "\n";
      return report.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
