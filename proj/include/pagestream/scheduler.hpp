#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pagestream/graph.hpp"
#include "pagestream/types.hpp"

namespace pagestream {

// Virtual-time cost model. Transfers move page bytes over one channel;
// kernels consume edges with the worker pool shared evenly across the
// kernels running at any instant.
struct TransferModel {
  double bytes_per_time_unit = 11.0;
  double edges_per_time_unit_per_worker = 1.75;
  int worker_count = 4;

  void validate() const;
  double transfer_time(std::uint64_t bytes) const { return double(bytes) / bytes_per_time_unit; }
  double kernel_time(std::uint64_t edges, int workers) const {
    return double(edges) / (edges_per_time_unit_per_worker * double(workers));
  }
};

enum class ScheduleModeKind {
  Baseline,      // transfer, run once, evict; one-in-one-out
  Reentry,       // baseline, but re-run each page until quiet or MRT runs
  DoubleBuffer,  // run one window half `reps` times while the other streams
  Pipelined,     // B-1 resident kernels overlap one streaming transfer
  PipelinedFine  // pipelined plus idle-slot filling
};

struct ScheduleMode {
  ScheduleModeKind kind = ScheduleModeKind::Baseline;
  int max_reentry_times = 2;   // Reentry: total runs per page per pass
  int buffer_repetitions = 3;  // DoubleBuffer: runs per half per pass

  bool pipelined_family() const {
    return kind == ScheduleModeKind::Pipelined || kind == ScheduleModeKind::PipelinedFine;
  }
  void validate(std::uint32_t window_capacity) const;
};

const char* to_string(ScheduleModeKind k);
ScheduleModeKind parse_schedule_mode(const std::string& name);  // throws ConfigError

// ---------------------------------------------------------------------------
// Timing trace
// ---------------------------------------------------------------------------

enum class TraceEventKind { XferStart, XferEnd, KernelStart, KernelEnd, Reentry };

const char* to_string(TraceEventKind k);

struct TraceEvent {
  double time = 0.0;
  TraceEventKind kind = TraceEventKind::KernelStart;
  std::uint32_t page_id = 0;
  std::uint32_t pass_index = 0;
};

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> trace);

// last event time - first event time
double simulate_pass_makespan(std::span<const TraceEvent> pass_trace);

// Virtual clock: monotone `now` plus the pending events of the current
// pass, dispatched in non-decreasing time with a deterministic
// (time, page, kind) tie-break.
struct VirtualClock {
  double now = 0.0;
  std::vector<TraceEvent> pending;

  void schedule(double t, TraceEventKind kind, std::uint32_t page, std::uint32_t pass) {
    pending.push_back({t, kind, page, pass});
  }
  void advance_to(double t) {
    if (t > now) now = t;
  }
  // Sorted events of the pass; clears the queue.
  std::vector<TraceEvent> drain();
};

// ---------------------------------------------------------------------------
// Window of resident page slots
// ---------------------------------------------------------------------------

enum class KernelState : std::uint8_t { Queued, Running, Done };

class Window {
 public:
  explicit Window(std::uint32_t capacity);

  std::uint32_t capacity() const { return capacity_; }
  bool contains(std::uint32_t page) const;
  KernelState state(std::uint32_t page) const;
  void set_state(std::uint32_t page, KernelState s);
  std::uint32_t resident_count() const;
  std::vector<std::uint32_t> resident_pages() const;  // ascending page id

  void admit(std::uint32_t page);  // throws ContractError when full
  void evict(std::uint32_t page);  // throws ContractError unless kernel is done
  // New pass: every resident kernel is pending again.
  void reset_states();

  std::optional<std::uint32_t> in_flight;

 private:
  struct Slot {
    std::uint32_t page = 0;
    KernelState state = KernelState::Queued;
    bool occupied = false;
  };
  int find(std::uint32_t page) const;
  std::uint32_t capacity_;
  std::vector<Slot> slots_;
};

// ---------------------------------------------------------------------------
// Fine-grained idle-slot rule
// ---------------------------------------------------------------------------

enum class IdleAction { TransferNext, ReentryOne, Wait };

struct IdleSlots {
  bool transfer_idle = false;       // channel has nothing in flight
  bool more_to_transfer = false;    // pages still waiting to stream
  bool oldest_kernel_done = false;  // next eviction victim finished its run
  bool compute_idle = false;        // current kernel set fully finished
  bool transfer_in_flight = false;  // the pending set's page still streaming
};

IdleAction fill_idle_slot(const IdleSlots& s);

// ---------------------------------------------------------------------------
// Dense-pass scheduling
// ---------------------------------------------------------------------------

struct KernelRunStats {
  std::uint64_t attempts = 0;
  std::uint64_t valid_updates = 0;
  std::uint64_t skipped = 0;
  std::uint64_t edges_read = 0;

  KernelRunStats& operator+=(const KernelRunStats& o) {
    attempts += o.attempts;
    valid_updates += o.valid_updates;
    skipped += o.skipped;
    edges_read += o.edges_read;
    return *this;
  }
};

// Executes the pull work of one page; `workers` is the share of the pool
// the run may use. Invoked in virtual admission order.
using KernelFn = std::function<KernelRunStats(std::uint32_t page_index, int workers)>;

struct DensePassOutcome {
  KernelRunStats totals;
  std::uint64_t kernel_runs = 0;
  std::uint64_t pages_transferred = 0;
  std::uint64_t bytes_transferred = 0;
  double start_time = 0.0;
  double end_time = 0.0;

  double makespan() const { return end_time - start_time; }
};

// Run every page's kernel at least once under the given mode. Pages
// already resident from the previous pass are processed first without
// re-transfer. The window and clock persist across passes.
DensePassOutcome schedule_dense_pass(const PageSet& pages, const ScheduleMode& mode,
                                     Window& window, VirtualClock& clock,
                                     const TransferModel& tm, const KernelFn& kernel,
                                     std::uint32_t pass_index,
                                     std::vector<TraceEvent>* trace);

}  // namespace pagestream
