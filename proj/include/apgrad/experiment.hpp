#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apgrad/engine.hpp"
#include "apgrad/presets.hpp"

namespace apgrad {

// Invalid user input (flags, config files, problem strings). The CLI maps
// this to exit code 2; other failures map to 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One experiment: a problem, one or more optimizer configurations, and a
// seed list. Explicit schedule fields override the preset (or the
// defaults when no preset is named).
struct ExperimentConfig {
  std::string problem = "quadratic:d=10,span=10,sigma=0.1,w=1";
  std::string geometry = "box";  // "box" or "ball"
  std::vector<std::string> presets;
  std::optional<std::string> estimator;  // "adam-max" or "amsgrad"
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<double> eta;     // switches alpha to scale/n^eta
  std::optional<double> lambda;  // switches beta to lambda^n
  std::optional<double> epsilon;
  std::optional<Vec> x0;
  std::int64_t steps = 100000;
  std::vector<std::uint64_t> seeds = {1};
  std::int64_t record_every = 1000;
  std::string out_dir = "out";
};

struct ResolvedRun {
  std::string label;
  EstimatorKind estimator = EstimatorKind::AmsGrad;
  ScheduleConfig schedule;
};

struct ComparisonRow {
  std::string preset;
  std::size_t runs = 0;
  double final_f_mean = 0;
  double final_f_se = 0;
  double final_gap_mean = 0;
  double final_gap_se = 0;
  double exponent_mean = 0;  // NaN when no run had a usable fit
  double steps_per_sec = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // one per (configuration, seed)
  std::vector<std::string> csv_paths;
  std::vector<std::string> json_paths;
  std::vector<ComparisonRow> comparison;
  std::string comparison_csv_path;
  std::string comparison_txt_path;
  std::string config_path;
};

// `name:key=value,...`; names: quadratic (d, span, sigma, w, seed, t),
// logistic (d, n, noise, w, seed), wells (d, sigma, w),
// adversarial (period, mag). geometry "ball" swaps the box for a ball of
// radius w (rejected for adversarial).
ProblemSpec parse_problem_spec(const std::string& spec, const std::string& geometry = "box");

std::vector<ResolvedRun> resolve_runs(const ExperimentConfig& cfg);

// Flat key=value text, one pair per line; '#' starts a comment. Reparsing
// serialize_config output reproduces the config exactly.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Runs every (configuration, seed) pair concurrently, writes one CSV and
// one JSON summary per run plus a cross-configuration comparison table and
// the resolved config. Artifacts depend only on config and seeds.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Aggregates previously written JSON summaries; all inputs must share one
// problem id.
std::vector<ComparisonRow> compare(const std::vector<std::string>& summary_paths);

// Throughput is wall-clock derived, so run_experiment keeps it out of the
// comparison artifacts it writes; the compare command reports it.
std::string comparison_csv_text(const std::vector<ComparisonRow>& rows,
                                bool with_throughput = true);
std::string render_comparison(const std::vector<ComparisonRow>& rows,
                              bool with_throughput = true);

// Record serialization used by run_experiment; exposed for tests.
std::string record_csv_text(const RunRecord& record);
std::string record_summary_json(const RunRecord& record, const ProblemSpec& problem,
                                const ScheduleConfig& schedule, const std::string& label);

}  // namespace apgrad
