#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "pagestream/graph.hpp"
#include "pagestream/metrics.hpp"
#include "pagestream/predictor.hpp"
#include "pagestream/programs.hpp"
#include "pagestream/scheduler.hpp"

namespace pagestream {

enum class ClockMode { Virtual, Wall };
enum class ExecutionPolicy { DensitySwitched, ForceSparse, ForceDense };
enum class StageKind { SparsePush, DensePull };

// Active vertex set; sparse id list and dense membership views are
// interconvertible. Out-edge volume is cached for the density switch.
class Frontier {
 public:
  Frontier() = default;
  static Frontier from_ids(std::vector<VertexId> ids, const CsrGraph& graph);
  static Frontier from_dense(const std::vector<std::uint8_t>& members, const CsrGraph& graph);
  static Frontier all(const CsrGraph& graph);

  const std::vector<VertexId>& ids() const { return ids_; }
  std::vector<std::uint8_t> dense(VertexId num_vertices) const;
  std::uint64_t active_count() const { return ids_.size(); }
  std::uint64_t active_out_edge_count() const { return out_edges_; }
  bool empty() const { return ids_.empty(); }

 private:
  std::vector<VertexId> ids_;  // ascending, unique
  std::uint64_t out_edges_ = 0;
};

struct EngineConfig {
  VertexId page_vertex_capacity = 0;  // 0 = auto (see resolve_page_capacity)
  double density_threshold_fraction = 0.05;
  PredictorMode predictor = PredictorMode::Off;
  ScheduleMode schedule;
  std::uint32_t window_capacity = 8;  // B
  TransferModel transfer;             // includes worker_count
  ClockMode clock = ClockMode::Virtual;
  ExecutionPolicy execution = ExecutionPolicy::DensitySwitched;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
};

// Default: 32 pages per graph, so a window of 8 holds a quarter of the
// destinations and the out-of-window regime is exercised at test scale.
VertexId resolve_page_capacity(VertexId configured, VertexId num_vertices);

StageKind density_switch(const Frontier& frontier, const CsrGraph& graph,
                         const EngineConfig& config);

// Optional per-update bookkeeping shared by the push and pull executors.
struct UpdateSink {
  LabelHistogram* histogram = nullptr;            // strong CC
  std::atomic<Value>* min_changed = nullptr;      // strong SSSP
  std::vector<std::uint8_t>* changed = nullptr;   // changed-this-pass flags

  void on_update(VertexId v, Value old_value, Value new_value) {
    if (histogram) histogram->move_label(old_value, new_value);
    if (min_changed) {
      Value cur = min_changed->load(std::memory_order_relaxed);
      while (new_value < cur &&
             !min_changed->compare_exchange_weak(cur, new_value, std::memory_order_relaxed)) {
      }
    }
    if (changed) (*changed)[v] = 1;
  }
};

// One host-side push pass over the active frontier. Fills `next` with the
// vertices whose values changed. No transfer cost.
PassStats sparse_push_pass(const CsrGraph& graph, VertexValues& values,
                           const Frontier& frontier, const VertexProgram& program,
                           Frontier& next, UpdateSink* sink = nullptr);

// Which destinations of a dense pass attempt an update.
struct PredictorGate {
  PredictorMode mode = PredictorMode::Off;
  AlgoKind kind = AlgoKind::Bfs;
  const StrongThresholds* thresholds = nullptr;       // strong
  const std::vector<VertexStatus>* status = nullptr;  // weak
  bool ignore = false;                                // recovery sweeps

  bool should_attempt(VertexId v, Value current) const {
    if (ignore || mode == PredictorMode::Off) return true;
    if (mode == PredictorMode::Strong) return !strong_converged(kind, current, *thresholds);
    return weak_should_attempt((*status)[v]);
  }
};

// Pull kernel for one page: every admitted destination folds combine()
// over all of its in-edges; skipped destinations read nothing.
KernelRunStats dense_pull_page(const CscPage& page, VertexValues& values,
                               const VertexProgram& program, const PredictorGate& gate,
                               UpdateSink* sink = nullptr, int workers = 1,
                               bool parallel = false);

// Full pull pass ignoring predictor state; returns the vertices whose
// values changed and resets their statuses to 0. Scheduled as a baseline
// sweep; transfers and attempts are charged to `outcome`.
std::vector<VertexId> recovery_scan(const PageSet& pages, VertexValues& values,
                                    const VertexProgram& program,
                                    std::vector<VertexStatus>& status, Window& window,
                                    VirtualClock& clock, const TransferModel& tm,
                                    std::uint32_t pass_index, DensePassOutcome& outcome,
                                    std::vector<TraceEvent>* trace);

struct RunResult {
  std::vector<Value> values;
  MetricsReport metrics;
  std::vector<TraceEvent> trace;  // populated when config.record_trace
};

// Density-switched push/pull loop with scheduled dense passes, predictor
// integration and recovery-confirmed termination in weak mode.
RunResult run(const CsrGraph& csr, const PageSet& pages, const VertexProgram& program,
              const EngineConfig& config);

}  // namespace pagestream
