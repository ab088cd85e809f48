#include "pagestream/engine.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <string>

#include "pagestream/errors.hpp"

namespace pagestream {

Frontier Frontier::from_ids(std::vector<VertexId> ids, const CsrGraph& graph) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Frontier f;
  for (VertexId v : ids) f.out_edges_ += graph.out_degree(v);
  f.ids_ = std::move(ids);
  return f;
}

Frontier Frontier::from_dense(const std::vector<std::uint8_t>& members, const CsrGraph& graph) {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < members.size(); ++v)
    if (members[v]) ids.push_back(v);
  return from_ids(std::move(ids), graph);
}

Frontier Frontier::all(const CsrGraph& graph) {
  std::vector<VertexId> ids(graph.num_vertices);
  for (VertexId v = 0; v < graph.num_vertices; ++v) ids[v] = v;
  Frontier f;
  f.ids_ = std::move(ids);
  f.out_edges_ = graph.num_edges();
  return f;
}

std::vector<std::uint8_t> Frontier::dense(VertexId num_vertices) const {
  std::vector<std::uint8_t> members(num_vertices, 0);
  for (VertexId v : ids_) members[v] = 1;
  return members;
}

void EngineConfig::validate() const {
  if (window_capacity < 2) throw ConfigError("window capacity must be >= 2");
  if (!(density_threshold_fraction > 0.0 && density_threshold_fraction <= 1.0))
    throw ConfigError("density threshold fraction must be in (0, 1]");
  transfer.validate();
  schedule.validate(window_capacity);
}

VertexId resolve_page_capacity(VertexId configured, VertexId num_vertices) {
  if (configured > 0) return configured;
  return std::max<VertexId>(1, (num_vertices + 31) / 32);
}

StageKind density_switch(const Frontier& frontier, const CsrGraph& graph,
                         const EngineConfig& config) {
  const double threshold = config.density_threshold_fraction * double(graph.num_edges());
  return double(frontier.active_out_edge_count()) > threshold ? StageKind::DensePull
                                                              : StageKind::SparsePush;
}

PassStats sparse_push_pass(const CsrGraph& graph, VertexValues& values,
                           const Frontier& frontier, const VertexProgram& program,
                           Frontier& next, UpdateSink* sink) {
  PassStats st;
  st.kind = PassKind::SparsePush;
  std::vector<std::uint8_t> in_next(graph.num_vertices, 0);
  std::vector<VertexId> next_ids;
  for (VertexId u : frontier.ids()) {
    const Value vu = values.load(u);
    const std::uint64_t lo = graph.out_offsets[u];
    const std::uint64_t hi = graph.out_offsets[u + 1];
    for (std::uint64_t k = lo; k < hi; ++k) {
      const VertexId v = graph.out_neighbors[k];
      const Weight w = graph.weighted() ? graph.out_weights[k] : 1;
      ++st.attempts;
      ++st.edges_read;
      const Value candidate = program.combine(vu, w);
      if (auto old = values.improve(v, candidate)) {
        ++st.valid_updates;
        if (sink) sink->on_update(v, *old, candidate);
        if (!in_next[v]) {
          in_next[v] = 1;
          next_ids.push_back(v);
        }
      }
    }
  }
  st.changed_vertices = next_ids.size();
  next = Frontier::from_ids(std::move(next_ids), graph);
  return st;
}

namespace {

struct DestResult {
  bool attempted = false;
  bool updated = false;
  std::uint64_t edges = 0;
};

inline DestResult pull_destination(const CscPage& page, VertexId local, VertexValues& values,
                                   const VertexProgram& program, const PredictorGate& gate,
                                   UpdateSink* sink) {
  DestResult r;
  const VertexId v = page.vertex_begin + local;
  const Value current = values.load(v);
  if (!gate.should_attempt(v, current)) return r;
  r.attempted = true;
  const std::uint32_t lo = page.in_offsets[local];
  const std::uint32_t hi = page.in_offsets[local + 1];
  r.edges = hi - lo;
  Value best = VertexProgram::identity;
  const bool weighted = !page.in_weights.empty();
  for (std::uint32_t k = lo; k < hi; ++k) {
    const Value c =
        program.combine(values.load(page.in_sources[k]), weighted ? page.in_weights[k] : 1);
    if (VertexProgram::better(c, best)) best = c;
  }
  if (VertexProgram::better(best, current)) {
    if (auto old = values.improve(v, best)) {
      r.updated = true;
      if (sink) sink->on_update(v, *old, best);
    }
  }
  return r;
}

}  // namespace

KernelRunStats dense_pull_page(const CscPage& page, VertexValues& values,
                               const VertexProgram& program, const PredictorGate& gate,
                               UpdateSink* sink, int workers, bool parallel) {
  KernelRunStats st;
  const std::int64_t n = page.range();
  std::uint64_t attempts = 0, valid = 0, skipped = 0, edges = 0;
#ifdef _OPENMP
  if (parallel && workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers) \
    reduction(+ : attempts, valid, skipped, edges)
    for (std::int64_t li = 0; li < n; ++li) {
      DestResult r = pull_destination(page, VertexId(li), values, program, gate, sink);
      if (!r.attempted) {
        ++skipped;
      } else {
        ++attempts;
        edges += r.edges;
        if (r.updated) ++valid;
      }
    }
    st.attempts = attempts;
    st.valid_updates = valid;
    st.skipped = skipped;
    st.edges_read = edges;
    return st;
  }
#else
  (void)parallel;
  (void)workers;
#endif
  for (std::int64_t li = 0; li < n; ++li) {
    DestResult r = pull_destination(page, VertexId(li), values, program, gate, sink);
    if (!r.attempted) {
      ++skipped;
    } else {
      ++attempts;
      edges += r.edges;
      if (r.updated) ++valid;
    }
  }
  st.attempts = attempts;
  st.valid_updates = valid;
  st.skipped = skipped;
  st.edges_read = edges;
  return st;
}

std::vector<VertexId> recovery_scan(const PageSet& pages, VertexValues& values,
                                    const VertexProgram& program,
                                    std::vector<VertexStatus>& status, Window& window,
                                    VirtualClock& clock, const TransferModel& tm,
                                    std::uint32_t pass_index, DensePassOutcome& outcome,
                                    std::vector<TraceEvent>* trace) {
  std::vector<std::uint8_t> changed(values.size(), 0);
  UpdateSink sink;
  sink.changed = &changed;
  PredictorGate gate;
  gate.ignore = true;
  KernelFn fn = [&](std::uint32_t page_index, int workers) {
    return dense_pull_page(pages.pages[page_index], values, program, gate, &sink, workers,
                           false);
  };
  ScheduleMode baseline;
  outcome = schedule_dense_pass(pages, baseline, window, clock, tm, fn, pass_index, trace);

  std::vector<VertexId> active;
  for (VertexId v = 0; v < values.size(); ++v) {
    if (changed[v]) {
      active.push_back(v);
      status[v] = 0;
    }
  }
  return active;
}

namespace {

struct Runner {
  const CsrGraph& csr;
  const PageSet& pages;
  const VertexProgram& program;
  const EngineConfig& config;

  VertexValues values;
  Window window;
  VirtualClock clock;
  MetricsReport metrics;
  std::vector<TraceEvent> trace;

  std::vector<VertexStatus> status;
  StrongThresholds thresholds;
  std::unique_ptr<LabelHistogram> histogram;
  std::atomic<Value> min_changed{kUnreached};
  std::unique_ptr<PredictionLog> log;
  std::vector<std::uint8_t> changed_flags;

  std::uint32_t pass_index = 0;

  Runner(const CsrGraph& c, const PageSet& p, const VertexProgram& prog,
         const EngineConfig& cfg)
      : csr(c), pages(p), program(prog), config(cfg), values(c.num_vertices, prog),
        window(cfg.window_capacity), changed_flags(c.num_vertices, 0) {
    if (cfg.predictor == PredictorMode::Weak) {
      status.assign(c.num_vertices, 0);
      log = std::make_unique<PredictionLog>(c.num_vertices);
    }
    if (cfg.predictor == PredictorMode::Strong && prog.kind == AlgoKind::Cc)
      histogram = std::make_unique<LabelHistogram>(c.num_vertices);
  }

  UpdateSink make_sink() {
    UpdateSink s;
    s.histogram = histogram.get();
    if (config.predictor == PredictorMode::Strong && program.kind == AlgoKind::Sssp)
      s.min_changed = &min_changed;
    s.changed = &changed_flags;
    return s;
  }

  void account(const PassStats& st) {
    metrics.passes += 1;
    metrics.update_attempts += st.attempts;
    metrics.valid_updates += st.valid_updates;
    metrics.skipped_vertices += st.skipped;
    metrics.edges_read += st.edges_read;
    metrics.per_pass.push_back(st);
  }

  Frontier initial_frontier() const {
    if (program.kind == AlgoKind::Cc) return Frontier::all(csr);
    return Frontier::from_ids({program.source}, csr);
  }

  Frontier run_sparse(const Frontier& frontier) {
    std::fill(changed_flags.begin(), changed_flags.end(), 0);
    UpdateSink sink = make_sink();
    Frontier next;
    PassStats st = sparse_push_pass(csr, values, frontier, program, next, &sink);
    st.pass_index = pass_index;
    if (log)
      for (VertexId v : next.ids()) log->record_value_change(v, pass_index);
    account(st);
    metrics.sparse_passes += 1;
    ++pass_index;
    return next;
  }

  Frontier run_dense(const Frontier&) {
    const bool weak = config.predictor == PredictorMode::Weak;
    std::fill(changed_flags.begin(), changed_flags.end(), 0);

    PassStats st;
    st.kind = PassKind::DensePull;
    st.pass_index = pass_index;
    if (weak) {
      for (VertexStatus s : status) ++st.status_counts[s];
      st.has_status_counts = true;
    }

    UpdateSink sink = make_sink();
    PredictorGate gate;
    gate.mode = config.predictor;
    gate.kind = program.kind;
    gate.thresholds = &thresholds;
    gate.status = &status;
    const bool parallel = config.clock == ClockMode::Wall;
    KernelFn fn = [&](std::uint32_t page_idx, int workers) {
      return dense_pull_page(pages.pages[page_idx], values, program, gate, &sink, workers,
                             parallel);
    };
    DensePassOutcome oc =
        schedule_dense_pass(pages, config.schedule, window, clock, config.transfer, fn,
                            pass_index, config.record_trace ? &trace : nullptr);
    st.attempts = oc.totals.attempts;
    st.valid_updates = oc.totals.valid_updates;
    st.skipped = oc.totals.skipped;
    st.edges_read = oc.totals.edges_read;
    metrics.pages_transferred += oc.pages_transferred;
    metrics.bytes_transferred += oc.bytes_transferred;

    std::vector<VertexId> next_ids;
    for (VertexId v = 0; v < csr.num_vertices; ++v)
      if (changed_flags[v]) next_ids.push_back(v);
    st.changed_vertices = next_ids.size();

    if (weak) {
      for (VertexId v = 0; v < csr.num_vertices; ++v) {
        if (weak_should_attempt(status[v])) {
          const bool changed = changed_flags[v] != 0;
          log->record_attempt(v, changed, pass_index);
          status[v] = weak_transition(
              status[v], changed ? AttemptOutcome::Changed : AttemptOutcome::Unchanged);
        } else {
          status[v] = weak_transition(status[v], AttemptOutcome::Skipped);
        }
      }
    }
    if (config.predictor == PredictorMode::Strong)
      thresholds = refresh_thresholds(program.kind, thresholds, histogram.get(),
                                      min_changed.exchange(kUnreached));

    account(st);
    metrics.dense_passes += 1;
    ++pass_index;
    return Frontier::from_ids(std::move(next_ids), csr);
  }

  Frontier run_recovery() {
    DensePassOutcome oc;
    std::vector<VertexId> active =
        recovery_scan(pages, values, program, status, window, clock, config.transfer,
                      pass_index, oc, config.record_trace ? &trace : nullptr);
    PassStats st;
    st.kind = PassKind::Recovery;
    st.pass_index = pass_index;
    st.attempts = oc.totals.attempts;
    st.valid_updates = oc.totals.valid_updates;
    st.skipped = oc.totals.skipped;
    st.edges_read = oc.totals.edges_read;
    st.changed_vertices = active.size();
    metrics.pages_transferred += oc.pages_transferred;
    metrics.bytes_transferred += oc.bytes_transferred;
    if (log)
      for (VertexId v : active) log->record_value_change(v, pass_index);
    account(st);
    metrics.recovery_passes += 1;
    ++pass_index;
    return Frontier::from_ids(std::move(active), csr);
  }

  StageKind choose_stage(const Frontier& frontier) const {
    switch (config.execution) {
      case ExecutionPolicy::ForceSparse: return StageKind::SparsePush;
      case ExecutionPolicy::ForceDense: return StageKind::DensePull;
      case ExecutionPolicy::DensitySwitched: break;
    }
    return density_switch(frontier, csr, config);
  }

  RunResult run() {
    const auto wall_begin = std::chrono::steady_clock::now();
    const bool weak = config.predictor == PredictorMode::Weak;
    Frontier frontier = initial_frontier();
    bool prev_dense = false;

    for (;;) {
      if (frontier.empty()) {
        if (weak && prev_dense) {
          frontier = run_recovery();
          prev_dense = false;
          if (frontier.empty()) break;
          continue;
        }
        break;
      }
      const StageKind stage = choose_stage(frontier);
      if (stage == StageKind::SparsePush && weak && prev_dense) {
        // Dense-to-sparse switch: retrieve actives missed by dormancy.
        frontier = run_recovery();
        prev_dense = false;
        if (frontier.empty()) break;
        continue;
      }
      if (stage == StageKind::SparsePush) {
        frontier = run_sparse(frontier);
        prev_dense = false;
      } else {
        frontier = run_dense(frontier);
        prev_dense = true;
      }
    }

    metrics.virtual_makespan = clock.now;
    if (config.clock == ClockMode::Wall) {
      const auto wall_end = std::chrono::steady_clock::now();
      metrics.wall_seconds = std::chrono::duration<double>(wall_end - wall_begin).count();
    }
    if (log && log->event_count() > 0) metrics.prediction_accuracy = log->accuracy();

    RunResult result;
    result.values = values.snapshot();
    result.metrics = std::move(metrics);
    result.trace = std::move(trace);
    return result;
  }
};

}  // namespace

RunResult run(const CsrGraph& csr, const PageSet& pages, const VertexProgram& program,
              const EngineConfig& config) {
  config.validate();
  if (csr.num_vertices != pages.num_vertices)
    throw ConfigError("csr and page set disagree on vertex count");
  if (program.uses_weights() && (!csr.weighted() || !pages.weighted))
    throw ConfigError("sssp requires weighted graph structures");
  if (program.kind != AlgoKind::Cc && program.source >= csr.num_vertices)
    throw ConfigError("source vertex out of range");

  Runner runner(csr, pages, program, config);
  return runner.run();
}

}  // namespace pagestream
