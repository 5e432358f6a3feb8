#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binnms/labeling.hpp"

namespace binnms::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kRuntimeError = 3,
};

// Effective settings of one invocation, after defaults, config file and flags.
struct RunConfig {
  // Input
  std::string data_path;
  std::string schema_path;               // empty: data is already binary
  std::optional<std::string> label;      // label column name/index, or "none"
  std::optional<std::string> delimiter;  // ",", "tab", "whitespace"
  std::optional<bool> header;
  std::optional<double> threshold;

  // Algorithm
  std::string algo = "binnnms";  // binnnms | kmodes
  std::size_t k1 = 10;
  std::size_t k2 = 5;
  std::size_t j_max = 50;
  EpsilonMode epsilon_mode = EpsilonMode::mean_all;
  std::size_t k = 0;  // kmodes; 0 = number of ground-truth classes
  std::size_t runs = 1;
  std::size_t max_iter = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  // Sweep
  std::string k1_grid = "0,2..30";
  std::string k2_grid = "1..20";

  // Eval
  std::string truth_path;
  std::string pred_path;

  // Output
  std::string out_dir = ".";
  std::string out_path;         // encode/eval/summary: file instead of stdout
  std::size_t proto_width = 0;  // >0: also write prototypes as bit grids
  bool timing = false;          // add wall time to metrics.json
};

// Each command validates its config, does all work, and only then writes
// outputs, so a failed run leaves no partial files. Messages go to `log`.
int cmd_cluster(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_encode(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_summary(const RunConfig& cfg, std::ostream& out, std::ostream& log);

// Parses argv with subcommands cluster, sweep, eval, encode, summary.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

// Reads a label file: one label per line, or "index,label" rows with an
// optional header. Labels are mapped to ids by first appearance.
std::vector<int> read_labels(const std::string& path);

}  // namespace binnms::cli
