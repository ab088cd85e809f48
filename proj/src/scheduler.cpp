#include "pagestream/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "pagestream/errors.hpp"

namespace pagestream {

void TransferModel::validate() const {
  if (bytes_per_time_unit <= 0.0 || edges_per_time_unit_per_worker <= 0.0)
    throw ConfigError("transfer model rates must be positive");
  if (worker_count < 1) throw ConfigError("worker_count must be >= 1");
}

const char* to_string(ScheduleModeKind k) {
  switch (k) {
    case ScheduleModeKind::Baseline: return "baseline";
    case ScheduleModeKind::Reentry: return "reentry";
    case ScheduleModeKind::DoubleBuffer: return "double-buffer";
    case ScheduleModeKind::Pipelined: return "pipelined";
    case ScheduleModeKind::PipelinedFine: return "pipelined-fine";
  }
  return "?";
}

ScheduleModeKind parse_schedule_mode(const std::string& name) {
  if (name == "baseline") return ScheduleModeKind::Baseline;
  if (name == "reentry") return ScheduleModeKind::Reentry;
  if (name == "double-buffer") return ScheduleModeKind::DoubleBuffer;
  if (name == "pipelined") return ScheduleModeKind::Pipelined;
  if (name == "pipelined-fine") return ScheduleModeKind::PipelinedFine;
  throw ConfigError("unknown scheduler mode '" + name + "'");
}

void ScheduleMode::validate(std::uint32_t window_capacity) const {
  if (kind == ScheduleModeKind::Reentry && max_reentry_times < 1)
    throw ConfigError("max reentry times must be >= 1");
  if (kind == ScheduleModeKind::DoubleBuffer && buffer_repetitions < 1)
    throw ConfigError("double-buffer repetitions must be >= 1");
  if ((pipelined_family() || kind == ScheduleModeKind::DoubleBuffer) && window_capacity < 2)
    throw ConfigError(std::string("window capacity must be >= 2 for ") + to_string(kind));
}

const char* to_string(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::XferStart: return "xfer_start";
    case TraceEventKind::XferEnd: return "xfer_end";
    case TraceEventKind::KernelStart: return "kernel_start";
    case TraceEventKind::KernelEnd: return "kernel_end";
    case TraceEventKind::Reentry: return "reentry";
  }
  return "?";
}

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> trace) {
  out << "event_time,event_kind,page_id,pass_index\n";
  char buf[64];
  for (const TraceEvent& e : trace) {
    std::snprintf(buf, sizeof buf, "%.6f", e.time);
    out << buf << ',' << to_string(e.kind) << ',' << e.page_id << ',' << e.pass_index << '\n';
  }
}

double simulate_pass_makespan(std::span<const TraceEvent> pass_trace) {
  if (pass_trace.empty()) return 0.0;
  double lo = pass_trace.front().time, hi = pass_trace.front().time;
  for (const TraceEvent& e : pass_trace) {
    lo = std::min(lo, e.time);
    hi = std::max(hi, e.time);
  }
  return hi - lo;
}

std::vector<TraceEvent> VirtualClock::drain() {
  std::stable_sort(pending.begin(), pending.end(), [](const TraceEvent& a, const TraceEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.page_id != b.page_id) return a.page_id < b.page_id;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  std::vector<TraceEvent> out = std::move(pending);
  pending.clear();
  return out;
}

Window::Window(std::uint32_t capacity) : capacity_(capacity), slots_(capacity) {
  if (capacity < 1) throw ConfigError("window capacity must be >= 1");
}

int Window::find(std::uint32_t page) const {
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].occupied && slots_[i].page == page) return static_cast<int>(i);
  return -1;
}

bool Window::contains(std::uint32_t page) const { return find(page) >= 0; }

KernelState Window::state(std::uint32_t page) const {
  int i = find(page);
  if (i < 0) throw ContractError("page " + std::to_string(page) + " not resident");
  return slots_[i].state;
}

void Window::set_state(std::uint32_t page, KernelState s) {
  int i = find(page);
  if (i < 0) throw ContractError("page " + std::to_string(page) + " not resident");
  slots_[i].state = s;
}

std::uint32_t Window::resident_count() const {
  std::uint32_t n = 0;
  for (const Slot& s : slots_)
    if (s.occupied) ++n;
  return n;
}

std::vector<std::uint32_t> Window::resident_pages() const {
  std::vector<std::uint32_t> out;
  for (const Slot& s : slots_)
    if (s.occupied) out.push_back(s.page);
  std::sort(out.begin(), out.end());
  return out;
}

void Window::admit(std::uint32_t page) {
  if (find(page) >= 0) throw ContractError("page " + std::to_string(page) + " already resident");
  for (Slot& s : slots_) {
    if (!s.occupied) {
      s = {page, KernelState::Queued, true};
      return;
    }
  }
  throw ContractError("window full admitting page " + std::to_string(page));
}

void Window::evict(std::uint32_t page) {
  int i = find(page);
  if (i < 0) throw ContractError("evicting non-resident page " + std::to_string(page));
  if (slots_[i].state == KernelState::Running)
    throw ContractError("evicting page " + std::to_string(page) + " while its kernel runs");
  slots_[i].occupied = false;
}

void Window::reset_states() {
  for (Slot& s : slots_)
    if (s.occupied) s.state = KernelState::Queued;
}

IdleAction fill_idle_slot(const IdleSlots& s) {
  if (s.transfer_idle && s.more_to_transfer && s.oldest_kernel_done)
    return IdleAction::TransferNext;
  if (s.compute_idle && s.transfer_in_flight) return IdleAction::ReentryOne;
  return IdleAction::Wait;
}

namespace {

constexpr double kUnset = -1.0;

// Completion times of kernels started together at t0 with the worker pool
// split evenly across the ones still running (work conserving).
std::vector<double> share_finish_times(const std::vector<std::uint64_t>& work, double t0,
                                       const TransferModel& tm) {
  const std::size_t n = work.size();
  std::vector<std::size_t> by_work(n);
  for (std::size_t i = 0; i < n; ++i) by_work[i] = i;
  std::stable_sort(by_work.begin(), by_work.end(),
                   [&](std::size_t a, std::size_t b) { return work[a] < work[b]; });

  const double full_rate = tm.edges_per_time_unit_per_worker * double(tm.worker_count);
  std::vector<double> end(n, t0);
  double t = t0;
  std::uint64_t consumed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = by_work[k];
    const std::uint64_t delta = work[i] - consumed;
    t += double(delta) * double(n - k) / full_rate;
    consumed = work[i];
    end[i] = t;
  }
  return end;
}

struct PassRunner {
  const PageSet& pages;
  const ScheduleMode& mode;
  Window& window;
  VirtualClock& clock;
  const TransferModel& tm;
  const KernelFn& kernel;
  const std::uint32_t pass_index;
  const bool tracing;

  DensePassOutcome out;
  std::vector<std::uint32_t> order;  // Q: resident pages first, then the rest
  std::vector<double> arrival;       // per Q position
  std::vector<double> activity_end;  // per Q position; eviction readiness
  std::size_t stream_cursor = 0;     // next Q position the channel considers
  std::uint32_t free_slots = 0;
  double channel_free = 0.0;
  double compute_free = 0.0;

  void emit(double t, TraceEventKind k, std::uint32_t page) {
    if (tracing) clock.schedule(t, k, page, pass_index);
  }

  void build_order() {
    const std::uint32_t n = pages.page_count();
    std::vector<std::uint32_t> resident = window.resident_pages();
    std::vector<char> is_resident(n, 0);
    for (std::uint32_t p : resident)
      if (p < n) is_resident[p] = 1;
    order.reserve(n);
    for (std::uint32_t p : resident)
      if (p < n) order.push_back(p);
    for (std::uint32_t p = 0; p < n; ++p)
      if (!is_resident[p]) order.push_back(p);
    arrival.assign(n, clock.now);
    activity_end.assign(n, kUnset);
    free_slots = window.capacity() - window.resident_count();
    channel_free = clock.now;
    compute_free = clock.now;
    stream_cursor = resident.size();  // Q[0..|R|) need no transfer
  }

  // Run transfers for every pending stream target with Q position <= limit.
  // `not_before` throttles the start (0 = as early as the channel and a
  // slot allow).
  void advance_stream(std::size_t limit, double not_before) {
    while (stream_cursor <= limit) {
      const std::size_t t = stream_cursor++;
      const std::uint32_t page = order[t];
      double ready = clock.now;
      if (free_slots > 0) {
        --free_slots;
      } else {
        if (t < window.capacity())
          throw ContractError("transfer scheduled with no slot available");
        const std::size_t victim = t - window.capacity();
        if (activity_end[victim] == kUnset)
          throw ContractError("eviction victim still has pending kernel work");
        ready = activity_end[victim];
        window.evict(order[victim]);
      }
      const double start = std::max({channel_free, ready, not_before});
      const double end = start + tm.transfer_time(page_bytes(pages.pages[page], pages.weighted));
      window.admit(page);
      arrival[t] = end;
      channel_free = end;
      emit(start, TraceEventKind::XferStart, page);
      emit(end, TraceEventKind::XferEnd, page);
      out.pages_transferred += 1;
      out.bytes_transferred += page_bytes(pages.pages[page], pages.weighted);
    }
  }

  KernelRunStats run_one(std::uint32_t page, double start, bool is_reentry, double& end_out) {
    KernelRunStats stats = kernel(page, tm.worker_count);
    const double end = start + tm.kernel_time(stats.edges_read, tm.worker_count);
    emit(start, is_reentry ? TraceEventKind::Reentry : TraceEventKind::KernelStart, page);
    emit(end, TraceEventKind::KernelEnd, page);
    out.totals += stats;
    out.kernel_runs += 1;
    end_out = end;
    return stats;
  }

  void run_baseline() {
    const bool repeats = mode.kind == ScheduleModeKind::Reentry;
    for (std::size_t i = 0; i < order.size(); ++i) {
      advance_stream(i, 0.0);
      const std::uint32_t page = order[i];
      double start = std::max(compute_free, arrival[i]);
      window.set_state(page, KernelState::Running);
      double end = start;
      int runs = 0;
      for (;;) {
        ++runs;
        KernelRunStats stats = run_one(page, start, runs > 1, end);
        if (!repeats || runs >= mode.max_reentry_times || stats.valid_updates == 0) break;
        start = end;
      }
      activity_end[i] = end;
      compute_free = end;
      window.set_state(page, KernelState::Done);
    }
  }

  void run_double_buffer() {
    const std::size_t n = order.size();
    const std::size_t half = std::max<std::size_t>(1, window.capacity() / 2);
    for (std::size_t lo = 0; lo < n; lo += half) {
      const std::size_t hi = std::min(lo + half, n);
      advance_stream(hi - 1, 0.0);
      double set_start = compute_free;
      for (std::size_t q = lo; q < hi; ++q) set_start = std::max(set_start, arrival[q]);
      for (std::size_t q = lo; q < hi; ++q)
        window.set_state(order[q], KernelState::Running);

      std::vector<double> ends;
      for (int rep = 1; rep <= mode.buffer_repetitions; ++rep) {
        std::vector<std::uint64_t> work;
        work.reserve(hi - lo);
        for (std::size_t q = lo; q < hi; ++q) {
          KernelRunStats stats = kernel(order[q], tm.worker_count);
          work.push_back(stats.edges_read);
          out.totals += stats;
          out.kernel_runs += 1;
          emit(set_start, rep == 1 ? TraceEventKind::KernelStart : TraceEventKind::Reentry,
               order[q]);
        }
        ends = share_finish_times(work, set_start, tm);
        double max_end = set_start;
        for (std::size_t k = 0; k < ends.size(); ++k) {
          emit(ends[k], TraceEventKind::KernelEnd, order[lo + k]);
          max_end = std::max(max_end, ends[k]);
        }
        set_start = max_end;
      }
      for (std::size_t q = lo; q < hi; ++q) {
        activity_end[q] = ends[q - lo];
        window.set_state(order[q], KernelState::Done);
      }
      compute_free = set_start;
    }
  }

  void run_pipelined() {
    const std::size_t n = order.size();
    const std::size_t compute_slots = std::min<std::size_t>(window.capacity() - 1, n);
    const std::size_t set_count = n - compute_slots + 1;
    const bool fine = mode.kind == ScheduleModeKind::PipelinedFine;

    advance_stream(compute_slots - 1, 0.0);  // pipeline fill

    for (std::size_t j = 0; j < set_count; ++j) {
      double needed = arrival[j + compute_slots - 1];
      if (j == 0)
        for (std::size_t q = 0; q < compute_slots; ++q) needed = std::max(needed, arrival[q]);

      if (fine && j > 0) {
        // Compute went idle waiting for the stream: re-run one finished
        // page of the previous set per idle event.
        while (needed > compute_free) {
          IdleSlots idle;
          idle.compute_idle = true;
          idle.transfer_in_flight = true;
          if (fill_idle_slot(idle) != IdleAction::ReentryOne) break;
          std::size_t victim = j - 1;
          for (std::size_t q = j - 1; q < j - 1 + compute_slots; ++q)
            if (order[q] < order[victim]) victim = q;
          double end;
          run_one(order[victim], compute_free, true, end);
          activity_end[victim] = end;
          compute_free = end;
        }
      }

      const double set_start = std::max(compute_free, needed);
      std::vector<std::uint64_t> work;
      work.reserve(compute_slots);
      for (std::size_t q = j; q < j + compute_slots; ++q) {
        window.set_state(order[q], KernelState::Running);
        KernelRunStats stats = kernel(order[q], tm.worker_count);
        work.push_back(stats.edges_read);
        out.totals += stats;
        out.kernel_runs += 1;
        emit(set_start, TraceEventKind::KernelStart, order[q]);
      }
      const std::vector<double> ends = share_finish_times(work, set_start, tm);
      double max_end = set_start;
      for (std::size_t k = 0; k < ends.size(); ++k) {
        emit(ends[k], TraceEventKind::KernelEnd, order[j + k]);
        activity_end[j + k] = ends[k];
        window.set_state(order[j + k], KernelState::Done);
        max_end = std::max(max_end, ends[k]);
      }
      compute_free = max_end;

      // Stream the page the next set needs while this one computes. The
      // fine variant may start it as soon as the channel and the oldest
      // finished slot allow, which can be during the previous set.
      if (j + compute_slots < n)
        advance_stream(j + compute_slots, fine ? 0.0 : set_start);
    }
  }

  DensePassOutcome run() {
    out.start_time = clock.now;
    if (pages.page_count() == 0) {
      out.end_time = clock.now;
      return out;
    }
    build_order();
    switch (mode.kind) {
      case ScheduleModeKind::Baseline:
      case ScheduleModeKind::Reentry:
        run_baseline();
        break;
      case ScheduleModeKind::DoubleBuffer:
        run_double_buffer();
        break;
      case ScheduleModeKind::Pipelined:
      case ScheduleModeKind::PipelinedFine:
        run_pipelined();
        break;
    }
    out.end_time = std::max(compute_free, channel_free);
    clock.advance_to(out.end_time);
    return out;
  }
};

}  // namespace

DensePassOutcome schedule_dense_pass(const PageSet& pages, const ScheduleMode& mode,
                                     Window& window, VirtualClock& clock,
                                     const TransferModel& tm, const KernelFn& kernel,
                                     std::uint32_t pass_index, std::vector<TraceEvent>* trace) {
  tm.validate();
  mode.validate(window.capacity());
  window.reset_states();
  PassRunner runner{pages,  mode,       window, clock, tm, kernel,
                    pass_index, trace != nullptr};
  DensePassOutcome out = runner.run();
  if (trace) {
    std::vector<TraceEvent> events = clock.drain();
    trace->insert(trace->end(), events.begin(), events.end());
  }
  return out;
}

}  // namespace pagestream
