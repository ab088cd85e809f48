#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pagestream/types.hpp"

namespace pagestream {

enum class PassKind { SparsePush, DensePull, Recovery };

// Per-pass counters. attempts/skipped are per destination visit, so in
// multi-iteration scheduler modes they exceed the vertex count.
struct PassStats {
  std::uint32_t pass_index = 0;
  PassKind kind = PassKind::SparsePush;
  std::uint64_t attempts = 0;
  std::uint64_t valid_updates = 0;
  std::uint64_t skipped = 0;
  std::uint64_t edges_read = 0;
  std::uint64_t changed_vertices = 0;
  // Status populations at pass start; meaningful for predictor-governed
  // dense passes under weak prediction.
  std::array<std::uint64_t, 6> status_counts{};
  bool has_status_counts = false;
};

struct MetricsReport {
  std::uint64_t passes = 0;
  std::uint64_t sparse_passes = 0;
  std::uint64_t dense_passes = 0;
  std::uint64_t recovery_passes = 0;

  std::uint64_t pages_transferred = 0;
  std::uint64_t bytes_transferred = 0;

  std::uint64_t update_attempts = 0;
  std::uint64_t valid_updates = 0;
  std::uint64_t skipped_vertices = 0;
  std::uint64_t edges_read = 0;

  double virtual_makespan = 0.0;
  double wall_seconds = 0.0;  // 0 in virtual-clock mode

  std::vector<PassStats> per_pass;
  std::optional<double> prediction_accuracy;

  // Edges actually traversed per unit of the active clock; skipped
  // vertices contribute nothing.
  double throughput() const {
    const double t = wall_seconds > 0.0 ? wall_seconds : virtual_makespan;
    return t > 0.0 ? double(edges_read) / t : 0.0;
  }
};

// Per-pass status populations for weak-prediction runs. One row per
// governed dense pass: counts for status 0..5 plus attempted = s0+s1+s5,
// skipped = s2+s3+s4 and real = changed vertex count.
// Throws DataError when the run recorded no status histograms.
void write_status_histogram_csv(std::ostream& out, const MetricsReport& report);

}  // namespace pagestream
