#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pagestream/engine.hpp"
#include "pagestream/errors.hpp"
#include "pagestream/reference.hpp"
#include "support.hpp"

using namespace pagestream;
using namespace testsupport;

namespace {

struct Built {
  EdgeList edges;
  CsrGraph csr;
  PageSet pages;
};

Built build(EdgeList el, VertexId page_cap) {
  Built b;
  b.csr = build_csr(el);
  b.pages = build_csc_pages(el, page_cap);
  b.edges = std::move(el);
  return b;
}

VertexProgram program_for(AlgoKind kind, VertexId source, const EdgeList& el) {
  switch (kind) {
    case AlgoKind::Bfs: return make_bfs(source, el.num_vertices);
    case AlgoKind::Cc: return make_cc();
    case AlgoKind::Sssp: return make_sssp(source, el.num_vertices, el.weighted());
  }
  return {};
}

}  // namespace

TEST_CASE("density_switch uses a strict threshold on out-edge volume") {
  // star: vertex 0 has 10 out-edges, the leaves have none
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= 10; ++v) edges.push_back({0, v});
  Built b = build(make_graph(11, edges), 4);

  EngineConfig config;
  config.density_threshold_fraction = 0.5;  // threshold = 5 edges

  Frontier all = Frontier::all(b.csr);
  CHECK(density_switch(all, b.csr, config) == StageKind::DensePull);

  Frontier leaf = Frontier::from_ids({3}, b.csr);
  CHECK(density_switch(leaf, b.csr, config) == StageKind::SparsePush);

  // exactly at the threshold stays sparse
  Frontier half = Frontier::from_ids({0}, b.csr);
  config.density_threshold_fraction = 1.0;
  CHECK(double(half.active_out_edge_count()) == 10.0);
  CHECK(density_switch(half, b.csr, config) == StageKind::SparsePush);
}

TEST_CASE("frontier representations are interconvertible") {
  Built b = build(make_graph(6, {{0, 1}, {0, 2}, {4, 5}}), 2);
  Frontier f = Frontier::from_ids({4, 0, 4}, b.csr);  // dedup + sort
  CHECK(f.ids() == std::vector<VertexId>{0, 4});
  CHECK(f.active_count() == 2);
  CHECK(f.active_out_edge_count() == 3);
  Frontier g = Frontier::from_dense(f.dense(6), b.csr);
  CHECK(g.ids() == f.ids());
  CHECK(g.active_out_edge_count() == f.active_out_edge_count());
}

TEST_CASE("sparse push: one hop on a path") {
  Built b = build(make_graph(3, {{0, 1}, {1, 2}}), 4);
  VertexProgram p = make_bfs(0, 3);
  VertexValues values(3, p);
  Frontier next;
  PassStats st = sparse_push_pass(b.csr, values, Frontier::from_ids({0}, b.csr), p, next);
  CHECK(st.attempts == 1);
  CHECK(st.valid_updates == 1);
  CHECK(values.load(1) == 1);
  CHECK(next.ids() == std::vector<VertexId>{1});
}

TEST_CASE("sparse push: empty frontier does nothing") {
  Built b = build(make_graph(3, {{0, 1}}), 4);
  VertexProgram p = make_bfs(0, 3);
  VertexValues values(3, p);
  Frontier next;
  PassStats st = sparse_push_pass(b.csr, values, Frontier{}, p, next);
  CHECK(st.attempts == 0);
  CHECK(next.empty());
}

TEST_CASE("sparse push: cc label propagation") {
  Built b = build(symmetrize(make_graph(2, {{0, 1}})), 4);
  VertexProgram p = make_cc();
  VertexValues values(2, p);
  Frontier next;
  PassStats st = sparse_push_pass(b.csr, values, Frontier::all(b.csr), p, next);
  CHECK(values.load(1) == 0);
  CHECK(next.ids() == std::vector<VertexId>{1});
  CHECK(st.valid_updates == 1);
}

TEST_CASE("dense pull: predictor off attempts every destination") {
  Built b = build(make_graph(3, {{0, 1}, {1, 2}}), 4);
  VertexProgram p = make_bfs(0, 3);
  VertexValues values(3, p);
  PredictorGate gate;  // off
  KernelRunStats st = dense_pull_page(b.pages.pages[0], values, p, gate);
  CHECK(st.attempts == 3);
  CHECK(st.skipped == 0);
  CHECK(st.edges_read == 2);
  CHECK(st.valid_updates == 1);  // the source's neighbor
  CHECK(values.load(1) == 1);
}

TEST_CASE("dense pull: skip states read no edges") {
  Built b = build(make_graph(3, {{0, 1}, {1, 2}}), 4);
  VertexProgram p = make_bfs(0, 3);
  VertexValues values(3, p);
  std::vector<VertexStatus> status = {3, 3, 3};
  PredictorGate gate;
  gate.mode = PredictorMode::Weak;
  gate.kind = AlgoKind::Bfs;
  gate.status = &status;
  KernelRunStats st = dense_pull_page(b.pages.pages[0], values, p, gate);
  CHECK(st.attempts == 0);
  CHECK(st.skipped == 3);
  CHECK(st.edges_read == 0);
}

TEST_CASE("run: bfs on a two-vertex graph") {
  Built b = build(make_graph(2, {{0, 1}}), 1);
  EngineConfig config;
  RunResult r = run(b.csr, b.pages, make_bfs(0, 2), config);
  CHECK(r.values == std::vector<Value>{0, 1});
  CHECK(r.metrics.passes <= 2);
}

TEST_CASE("run: cc on an edgeless graph terminates after one quiet pass") {
  Built b = build(make_graph(3, {}), 2);
  EngineConfig config;
  RunResult r = run(b.csr, b.pages, make_cc(), config);
  CHECK(r.values == std::vector<Value>{0, 1, 2});
  CHECK(r.metrics.passes == 1);
  CHECK(r.metrics.valid_updates == 0);
}

TEST_CASE("run: final values are a fixpoint of the relaxation") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 20; ++iter) {
    EdgeList el = random_edge_list(rng, 30, 90, true);
    if (el.num_vertices == 0) continue;
    Built b = build(el, 5);
    VertexProgram p = make_sssp(0, el.num_vertices, true);
    EngineConfig config;
    config.window_capacity = 3;
    RunResult r = run(b.csr, b.pages, p, config);
    for (std::size_t i = 0; i < el.edges.size(); ++i) {
      const Edge& e = el.edges[i];
      const Value cand = p.combine(r.values[e.src], el.weights[i]);
      CHECK_FALSE(VertexProgram::better(cand, r.values[e.dst]));
    }
  }
}

TEST_CASE("run: mode independence across execution policies") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 15; ++iter) {
    EdgeList el = random_edge_list(rng, 24, 70, true);
    if (el.num_vertices == 0) continue;
    const VertexId source = VertexId(rng() % el.num_vertices);
    for (AlgoKind kind : {AlgoKind::Bfs, AlgoKind::Cc, AlgoKind::Sssp}) {
      EdgeList graph = kind == AlgoKind::Cc ? symmetrize(el) : el;
      Built b = build(graph, 4);
      VertexProgram p = program_for(kind, source, graph);
      const std::vector<Value> oracle = reference_solve(b.csr, kind, source);
      for (ExecutionPolicy policy : {ExecutionPolicy::DensitySwitched,
                                     ExecutionPolicy::ForceSparse, ExecutionPolicy::ForceDense}) {
        EngineConfig config;
        config.execution = policy;
        config.window_capacity = 3;
        RunResult r = run(b.csr, b.pages, p, config);
        CHECK(r.values == oracle);
      }
    }
  }
}

TEST_CASE("run: predictors preserve values and never add attempts (strong)") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 12; ++iter) {
    EdgeList el = random_edge_list(rng, 40, 150, true);
    if (el.num_vertices == 0) continue;
    const VertexId source = VertexId(rng() % el.num_vertices);
    for (AlgoKind kind : {AlgoKind::Bfs, AlgoKind::Cc, AlgoKind::Sssp}) {
      EdgeList graph = kind == AlgoKind::Cc ? symmetrize(el) : el;
      Built b = build(graph, 6);
      VertexProgram p = program_for(kind, source, graph);

      EngineConfig off;
      off.window_capacity = 4;
      RunResult base = run(b.csr, b.pages, p, off);

      EngineConfig strong = off;
      strong.predictor = PredictorMode::Strong;
      RunResult s = run(b.csr, b.pages, p, strong);
      CHECK(s.values == base.values);
      CHECK(s.metrics.update_attempts <= base.metrics.update_attempts);

      EngineConfig weak = off;
      weak.predictor = PredictorMode::Weak;
      RunResult w = run(b.csr, b.pages, p, weak);
      CHECK(w.values == base.values);
    }
  }
}

TEST_CASE("run: last pass has zero valid updates") {
  std::mt19937_64 rng(61);
  EdgeList el = random_edge_list(rng, 30, 80, false);
  Built b = build(el, 4);
  EngineConfig config;
  RunResult r = run(b.csr, b.pages, make_cc(), config);
  REQUIRE(!r.metrics.per_pass.empty());
  CHECK(r.metrics.per_pass.back().valid_updates == 0);
}

TEST_CASE("weak dormancy is corrected by the recovery sweep") {
  // Page order runs against the propagation direction, so vertex 1 goes
  // dormant before the wavefront reaches it and only the all-pull
  // recovery retrieves it.
  EdgeList el = make_graph(4, {{0, 3}, {3, 2}, {2, 1}});
  Built b = build(el, 1);
  VertexProgram p = make_bfs(0, 4);

  EngineConfig config;
  config.predictor = PredictorMode::Weak;
  config.execution = ExecutionPolicy::ForceDense;
  config.window_capacity = 4;  // hold every page so the pull order stays ascending
  RunResult r = run(b.csr, b.pages, p, config);
  CHECK(r.values == std::vector<Value>{0, 3, 2, 1});
  CHECK(r.values == reference_solve(b.csr, AlgoKind::Bfs, 0));
  CHECK(r.metrics.recovery_passes >= 1);

  // at least one recovery pass found a dormant vertex to wake
  bool recovered_someone = false;
  for (const PassStats& st : r.metrics.per_pass)
    if (st.kind == PassKind::Recovery && st.changed_vertices > 0) recovered_someone = true;
  CHECK(recovered_someone);
}

TEST_CASE("recovery_scan resets the statuses of changed vertices") {
  EdgeList el = make_graph(3, {{0, 1}, {1, 2}});
  Built b = build(el, 1);
  VertexProgram p = make_bfs(0, 3);
  VertexValues values(3, p);
  std::vector<VertexStatus> status = {3, 4, 2};  // everyone dormant
  Window window(2);
  VirtualClock clock;
  TransferModel tm;
  DensePassOutcome outcome;
  std::vector<VertexId> active =
      recovery_scan(b.pages, values, p, status, window, clock, tm, 0, outcome, nullptr);
  CHECK(active == std::vector<VertexId>{1, 2});  // both reached in one async sweep
  CHECK(status[0] == 3);                         // unchanged vertices keep their state
  CHECK(status[1] == 0);
  CHECK(status[2] == 0);
  CHECK(outcome.totals.attempts == 3);

  // quiet graph: second scan confirms the fixpoint
  DensePassOutcome again;
  std::vector<VertexId> none =
      recovery_scan(b.pages, values, p, status, window, clock, tm, 1, again, nullptr);
  CHECK(none.empty());
}

TEST_CASE("run: metrics partition attempts and skips per visit") {
  EdgeList el = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Built b = build(el, 2);
  EngineConfig config;
  config.predictor = PredictorMode::Weak;
  config.execution = ExecutionPolicy::ForceDense;
  RunResult r = run(b.csr, b.pages, make_bfs(0, 6), config);
  for (const PassStats& st : r.metrics.per_pass) {
    if (st.kind != PassKind::DensePull) continue;
    CHECK(st.attempts + st.skipped >= 6);  // every destination visited per kernel run
    CHECK(st.valid_updates <= st.attempts);
  }
}

TEST_CASE("engine config validation") {
  EngineConfig config;
  config.window_capacity = 1;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.window_capacity = 4;
  config.density_threshold_fraction = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.density_threshold_fraction = 0.05;
  config.transfer.worker_count = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("run rejects mismatched structures") {
  EdgeList weighted = make_graph(3, {{0, 1}}, {5});
  EdgeList unweighted = make_graph(3, {{0, 1}});
  CsrGraph csr = build_csr(unweighted);
  PageSet pages = build_csc_pages(unweighted, 2);
  VertexProgram sssp = make_sssp(0, 3, true);
  EngineConfig config;
  CHECK_THROWS_AS(run(csr, pages, sssp, config), ConfigError);
}

TEST_CASE("resolve_page_capacity default covers a quarter window") {
  CHECK(resolve_page_capacity(0, 4096) == 128);  // 32 pages
  CHECK(resolve_page_capacity(0, 5) == 1);
  CHECK(resolve_page_capacity(77, 4096) == 77);
}
