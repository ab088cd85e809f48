#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pagestream/engine.hpp"
#include "pagestream/ingest.hpp"

namespace pagestream {

struct ExperimentCell {
  ScheduleMode mode;
  PredictorMode predictor = PredictorMode::Off;
  int workers = 4;
  std::uint32_t window = 8;
};

// One dataset, one algorithm, a list of (scheduler, predictor, workers,
// window) cells, each run `repetitions` times with per-cell derived seeds.
struct ExperimentSpec {
  bool use_rmat = true;
  std::string graph_path;  // when use_rmat == false
  RmatParams rmat;
  bool weighted = false;  // assign uniform weights after generation/load
  Weight weight_min = 1;
  Weight weight_max = 64;

  AlgoKind algo = AlgoKind::Bfs;
  VertexId source = 0;
  VertexId page_cap = 0;  // 0 = auto
  double density_threshold_fraction = 0.05;
  ClockMode clock = ClockMode::Virtual;
  std::uint32_t repetitions = 1;
  std::uint64_t seed = 0;

  std::vector<ExperimentCell> cells;
};

// Flat key = value format, '#' comments; repeated
//   cell = <mode> <predictor> <workers> <window>
// lines define the matrix.
ExperimentSpec parse_experiment_spec(std::istream& in);

AlgoKind parse_algo(const std::string& name);              // throws ConfigError
PredictorMode parse_predictor(const std::string& name);    // throws ConfigError

struct MatrixResult {
  std::string csv;
  bool all_verified = true;
};

// One CSV row per cell x repetition. In virtual-clock mode repetition
// rows of a cell are byte-identical. Every cell is verified against
// reference_solve; failures flag the row and clear all_verified.
MatrixResult run_matrix(const ExperimentSpec& spec, bool parallel_cells = false);

// Deterministic per-cell seed derivation.
std::uint64_t derive_cell_seed(std::uint64_t base, std::uint64_t cell);

}  // namespace pagestream
