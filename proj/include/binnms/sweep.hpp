#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "binnms/dataset.hpp"
#include "binnms/labeling.hpp"
#include "binnms/pipeline.hpp"

namespace binnms {

struct SweepConfig {
  std::vector<std::size_t> k1_values;  // 0 = labeling without ascent
  std::vector<std::size_t> k2_values;
  std::size_t j_max = 50;
  EpsilonMode epsilon_mode = EpsilonMode::mean_all;
  unsigned threads = 0;
};

struct SweepCell {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::optional<double> nmi;    // absent without ground truth or on error
  std::optional<double> arand;
  std::size_t num_clusters = 0;
  double quant_error = 0.0;
  double epsilon = 0.0;
  std::string error;            // nonempty when the cell failed

  bool ok() const noexcept { return error.empty(); }
};

struct SweepTrajectory {
  std::size_t k1 = 0;
  ErrorTrajectory errors;
  std::string error;
};

struct SweepReport {
  std::vector<SweepCell> cells;                // k1-major, in grid order
  std::vector<SweepTrajectory> trajectories;   // one per k1 > 0, needs ground truth

  // Best successful cell by NMI (ties: higher ARAND, then grid order).
  const SweepCell* best_by_nmi() const;
  const SweepCell* best_by_arand() const;
};

// Runs the clustering for every (k1, k2) pair over the data points. The ascent
// is shared by all cells with the same k1; cells are otherwise independent and
// a failing cell records its error and the sweep continues.
SweepReport run_sweep(const Dataset& data, const SweepConfig& cfg);

// Parses "2..30", "1,5,10" or a mix like "0,2..4"; throws std::invalid_argument.
std::vector<std::size_t> parse_grid(const std::string& text);

}  // namespace binnms
