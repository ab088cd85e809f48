#pragma once

#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

#include "pagestream/types.hpp"

namespace pagestream {

enum class PredictorMode { Off, Strong, Weak };

const char* to_string(PredictorMode m);

// ---------------------------------------------------------------------------
// Weak prediction: 6-state per-vertex update-history automaton.
//
// States 0, 1, 5 attempt an update this pass; states 2, 3, 4 are dormant
// and are skipped. A valid update from any attempt state returns to 0.
//   0 --unchanged--> 5   (dormancy candidate)
//   5 --unchanged--> 3   (dormant: failed twice in a row)
//   3 --skipped--->  2 --skipped--> 1   (two dormant rounds, then probe)
//   1 --unchanged--> 4   (probe failed: one extra dormant round)
//   4 --skipped--->  3
// ---------------------------------------------------------------------------

using VertexStatus = std::uint8_t;  // 0..5

enum class AttemptOutcome { Changed, Unchanged, Skipped };

inline bool weak_should_attempt(VertexStatus s) {
  return s == 0 || s == 1 || s == 5;
}

// Throws ContractError on an illegal (status, outcome) pair.
VertexStatus weak_transition(VertexStatus status, AttemptOutcome outcome);

// ---------------------------------------------------------------------------
// Strong prediction: closed-form convergence thresholds refreshed once per
// completed dense pass.
//   BFS : value <= k   (k = completed dense passes)
//   CC  : value <  s   (s = min label whose component size still changed)
//   SSSP: value <  l   (l = min value written since the previous refresh)
// ---------------------------------------------------------------------------

struct StrongThresholds {
  std::uint64_t pass_count = 0;          // k
  Value min_unstable_label = 0;          // s; kUnreached when nothing changed
  Value min_changed_value = 0;           // l; kUnreached when nothing changed

  // Initial thresholds skip nothing (s = l = 0, k = 0 lets only provably
  // final values through for BFS).
};

bool strong_converged(AlgoKind kind, Value value, const StrongThresholds& t);

// Exact per-label population counts, maintained incrementally on every
// valid CC update. refresh() diffs against the previous snapshot and
// returns the smallest label whose count moved.
class LabelHistogram {
 public:
  explicit LabelHistogram(VertexId num_vertices);

  // Transfer one vertex from label `from` to label `to`. Thread-safe.
  void move_label(Value from, Value to);

  // Smallest net-changed label since the last refresh (kUnreached if
  // none), then re-snapshot. Must run exclusively at a pass boundary.
  Value refresh();

  std::uint32_t count(Value label) const {
    return counts_[label].load(std::memory_order_relaxed);
  }
  std::uint64_t total() const;
  VertexId size() const { return static_cast<VertexId>(counts_.size()); }

 private:
  std::vector<std::atomic<std::uint32_t>> counts_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::atomic<std::uint8_t>> dirty_;
};

// Advance k and recompute s / l for the algorithm at a dense-pass
// boundary. histogram may be null except for CC; min_changed_value is the
// smallest value written since the previous refresh (kUnreached if none).
StrongThresholds refresh_thresholds(AlgoKind kind, const StrongThresholds& current,
                                    LabelHistogram* histogram, Value min_changed_value);

// ---------------------------------------------------------------------------
// Update-history statistic behind the weak scheme: a vertex that changed
// before and then failed two consecutive attempts is predicted converged.
// An event is correct when the vertex value never changes afterwards.
// ---------------------------------------------------------------------------

class PredictionLog {
 public:
  explicit PredictionLog(VertexId num_vertices);

  // One attempt outcome for v in the dense pass `pass`.
  void record_attempt(VertexId v, bool changed, std::uint32_t pass);
  // A value change outside an attempt (push pass or recovery sweep).
  void record_value_change(VertexId v, std::uint32_t pass);

  std::uint64_t event_count() const { return events_.size(); }
  // Fraction of events after which the vertex never changed again.
  // Throws DataError when no events were recorded.
  double accuracy() const;

 private:
  struct Track {
    std::uint8_t consecutive_fails = 0;
    bool armed = false;  // saw a change since the last event
  };
  static constexpr std::uint32_t kNever = 0xffffffff;

  std::vector<Track> track_;
  std::vector<std::uint32_t> last_change_;
  std::vector<std::pair<VertexId, std::uint32_t>> events_;  // (vertex, pass)
};

}  // namespace pagestream
