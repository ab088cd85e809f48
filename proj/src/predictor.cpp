#include "pagestream/predictor.hpp"

#include <string>

#include "pagestream/errors.hpp"

namespace pagestream {

const char* to_string(PredictorMode m) {
  switch (m) {
    case PredictorMode::Off: return "off";
    case PredictorMode::Strong: return "strong";
    case PredictorMode::Weak: return "weak";
  }
  return "?";
}

VertexStatus weak_transition(VertexStatus status, AttemptOutcome outcome) {
  if (status > 5)
    throw ContractError("vertex status " + std::to_string(status) + " out of range");
  const bool attempt_state = weak_should_attempt(status);
  if (outcome == AttemptOutcome::Skipped) {
    if (attempt_state)
      throw ContractError("skipped outcome from attempt state " + std::to_string(status));
    switch (status) {
      case 3: return 2;
      case 2: return 1;
      case 4: return 3;
    }
  } else {
    if (!attempt_state)
      throw ContractError("update outcome from dormant state " + std::to_string(status));
    if (outcome == AttemptOutcome::Changed) return 0;
    switch (status) {
      case 0: return 5;
      case 5: return 3;
      case 1: return 4;
    }
  }
  throw ContractError("unhandled transition");  // unreachable
}

bool strong_converged(AlgoKind kind, Value value, const StrongThresholds& t) {
  switch (kind) {
    case AlgoKind::Bfs:
      return value != kUnreached && std::uint64_t(value) <= t.pass_count;
    case AlgoKind::Cc:
      return value < t.min_unstable_label;
    case AlgoKind::Sssp:
      return value < t.min_changed_value;
  }
  throw ConfigError("no strong convergence rule for this algorithm");
}

LabelHistogram::LabelHistogram(VertexId num_vertices)
    : counts_(num_vertices), prev_(num_vertices, 1), dirty_(num_vertices) {
  // CC starts with every vertex holding its own label.
  for (VertexId v = 0; v < num_vertices; ++v)
    counts_[v].store(1, std::memory_order_relaxed);
}

void LabelHistogram::move_label(Value from, Value to) {
  counts_[from].fetch_sub(1, std::memory_order_relaxed);
  counts_[to].fetch_add(1, std::memory_order_relaxed);
  dirty_[from].store(1, std::memory_order_relaxed);
  dirty_[to].store(1, std::memory_order_relaxed);
}

Value LabelHistogram::refresh() {
  Value min_changed = kUnreached;
  for (std::size_t label = 0; label < counts_.size(); ++label) {
    if (!dirty_[label].load(std::memory_order_relaxed)) continue;
    dirty_[label].store(0, std::memory_order_relaxed);
    const std::uint32_t cur = counts_[label].load(std::memory_order_relaxed);
    if (cur != prev_[label]) {
      prev_[label] = cur;
      if (min_changed == kUnreached) min_changed = static_cast<Value>(label);
    }
  }
  return min_changed;
}

std::uint64_t LabelHistogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& c : counts_) sum += c.load(std::memory_order_relaxed);
  return sum;
}

StrongThresholds refresh_thresholds(AlgoKind kind, const StrongThresholds& current,
                                    LabelHistogram* histogram, Value min_changed_value) {
  StrongThresholds next = current;
  next.pass_count = current.pass_count + 1;
  switch (kind) {
    case AlgoKind::Bfs:
      break;
    case AlgoKind::Cc:
      if (!histogram) throw ContractError("CC threshold refresh needs the label histogram");
      next.min_unstable_label = histogram->refresh();
      break;
    case AlgoKind::Sssp:
      next.min_changed_value = min_changed_value;
      break;
  }
  return next;
}

PredictionLog::PredictionLog(VertexId num_vertices)
    : track_(num_vertices), last_change_(num_vertices, kNever) {}

void PredictionLog::record_attempt(VertexId v, bool changed, std::uint32_t pass) {
  Track& t = track_[v];
  if (changed) {
    t.consecutive_fails = 0;
    t.armed = true;
    last_change_[v] = pass;
    return;
  }
  if (t.consecutive_fails < 255) ++t.consecutive_fails;
  if (t.armed && t.consecutive_fails == 2) {
    events_.emplace_back(v, pass);
    t.armed = false;  // one event per failure episode
  }
}

void PredictionLog::record_value_change(VertexId v, std::uint32_t pass) {
  track_[v].consecutive_fails = 0;
  track_[v].armed = true;
  last_change_[v] = pass;
}

double PredictionLog::accuracy() const {
  if (events_.empty())
    throw DataError("prediction accuracy undefined: no converged-prediction events recorded");
  std::uint64_t correct = 0;
  for (const auto& [v, pass] : events_)
    if (last_change_[v] == kNever || last_change_[v] <= pass) ++correct;
  return double(correct) / double(events_.size());
}

}  // namespace pagestream
