#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qadv/cli/run_config.hpp"

namespace qadv::cli {

/// Flags shared by the commands that build a run from scratch. Precedence:
/// defaults < config file < flags < QADV_SEED.
struct RunOptions {
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> data_path;
  bool synthetic = false;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "run";
  std::optional<std::string> model;
  std::optional<std::string> ablation;
  std::optional<int> epochs;
  std::optional<Index> rows;
};

RunConfig resolve_run_config(const RunOptions& opts);

struct CommandResult {
  Json report;
  std::filesystem::path report_path;
};

/// preprocess -> split -> train -> test metrics. Writes checkpoint.json,
/// history.csv, report.json and plots/predictions.csv under `out`.
CommandResult cmd_train(const RunOptions& opts);

inline const std::vector<std::string> kEvaluateSuites = {"metrics", "calibration", "conformal", "robustness",
                                                         "importance"};

struct EvaluateOptions {
  std::filesystem::path checkpoint;
  std::optional<std::string> data_path;
  bool synthetic = false;
  std::vector<std::string> suites = {"metrics"};
  /// Defaults to the checkpoint's directory.
  std::optional<std::filesystem::path> out;
};

/// Restores a checkpoint, rebuilds its data split and runs the suites.
/// Writes evaluation.json and plot CSVs.
CommandResult cmd_evaluate(const EvaluateOptions& opts);

struct CrossvalOptions {
  RunOptions run;
  std::vector<std::string> models;  // empty: the configured model
  std::optional<int> k;
  std::string baseline = "vanilla";
};

CommandResult cmd_crossval(const CrossvalOptions& opts);

struct ProfileOptions {
  RunOptions run;
  std::string qubits = "1..4";
  std::optional<int> latency_runs;
  std::optional<Index> latency_batch;
};

CommandResult cmd_profile(const ProfileOptions& opts);

struct ExplainOptions {
  std::filesystem::path checkpoint;
  std::optional<std::string> data_path;
  bool synthetic = false;
  std::string rows = "0";
  std::optional<std::filesystem::path> out;
};

/// Local explanations of selected rows of the prepared data set, written to
/// explanations.csv.
CommandResult cmd_explain(const ExplainOptions& opts);

/// "3", "0,4,7", "2-5" or combinations; indices must be < n.
std::vector<Index> parse_row_selection(const std::string& text, Index n);
/// "a..b" or a single count "n" (meaning 1..n).
std::pair<int, int> parse_qubit_range(const std::string& text);

}  // namespace qadv::cli
