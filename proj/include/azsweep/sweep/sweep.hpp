#pragma once

// One-at-a-time sweep: a shared baseline plus, for every swept parameter, one
// run at its minimum and one at its maximum with everything else at baseline.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "azsweep/instrumentation/cost_model.hpp"
#include "azsweep/pipeline/coach.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/pipeline/rating_games.hpp"

namespace azsweep::sweep {

struct GridEntry {
  std::string parameter;
  double min = 0.0;
  double def = 0.0;
  double max = 0.0;
};

struct SweepGrid {
  std::vector<GridEntry> entries;  // in parameter order

  // The minimum / default / maximum values of all twelve parameters.
  static SweepGrid standard();

  const GridEntry* find(std::string_view parameter) const;
  void set(const GridEntry& entry);  // replaces or appends
  SweepGrid restricted(std::span<const std::string> parameters) const;
};

struct SweepRun {
  std::string name;       // "baseline", "episode_min", ...
  std::string parameter;  // empty for the baseline
  std::string level;      // "default", "min" or "max"
  double value = 0.0;     // grid value of `parameter` (baseline: unused)
  double grid_default = 0.0;
  pipeline::ParameterSet ps;
};

// Baseline first, then min and max for each grid entry. Throws ConfigError
// naming the parameter when a grid value breaks ParameterSet invariants or
// min <= default <= max.
std::vector<SweepRun> generate_runs(const pipeline::ParameterSet& baseline, const SweepGrid& grid);

// Desk-scale budgets. Every run takes these values, except that a run varying
// an overridden parameter keeps its min/max ratio to the grid default, i.e.
// gets round(value * override / default) (at least 1 for counts).
struct BudgetOverrides {
  std::map<std::string, double> values;

  static BudgetOverrides desk();  // iteration 15, episode 10, mctssimu 25, arenacompare 10
  pipeline::ParameterSet apply(const SweepRun& run) const;
};

struct RunMetrics {
  double final_loss = 0.0;  // mean total loss over the last 3 iterations
  double final_elo = 0.0;   // NaN when unrated
  double total_time_s = 0.0;
  int iterations = 0;
  std::vector<double> iteration_loss;
};

RunMetrics metrics_from(std::span<const pipeline::IterationRecord> records, double wall_s);

struct RunResult {
  SweepRun run;
  pipeline::ParameterSet effective;
  bool ok = false;
  std::string error;
  RunMetrics metrics;
};

struct SweepReport {
  std::vector<RunResult> runs;
  bool parallel = false;
};

using Runner = std::function<RunMetrics(const SweepRun& run, const pipeline::ParameterSet& ps)>;

struct SweepOptions {
  bool parallel = false;  // concurrent runs; disables time classification
  int threads = 1;
  std::function<void(const RunResult&)> on_run_done;
};

// Runs are executed in order (or concurrently when parallel). A runner
// exception marks that run failed and the sweep continues.
SweepReport run_sweep(std::span<const SweepRun> runs, const BudgetOverrides& budget,
                      const Runner& runner, const SweepOptions& options = {});

struct PipelineRunnerOptions {
  std::filesystem::path output_root;
  pipeline::CoachOptions coach;
  pipeline::RatingOptions rating;
  std::function<std::string(const pipeline::ParameterSet&)> config_snapshot;
};

// Trains, rates and writes <output_root>/<run name>/.
Runner pipeline_runner(PipelineRunnerOptions options);

inline constexpr double kLossTolerance = 0.05;
inline constexpr double kEloTolerance = 50.0;

struct ParameterSummary {
  std::string parameter;
  std::vector<double> values;  // ascending, among successful runs
  std::vector<double> losses;
  std::vector<double> elos;
  std::vector<double> times;
  std::string best_loss;  // value, "similar" or "n/a"
  std::string best_elo;
  std::string best_time;  // value with the smallest time
  std::optional<instrumentation::TimeSensitivity> type;  // unset for parallel sweeps
};

struct SweepSummary {
  std::vector<ParameterSummary> parameters;
  std::vector<std::string> failed_runs;
};

SweepSummary summarize(const SweepReport& report);

void write_report_csv(std::ostream& out, const SweepReport& report);
SweepReport read_report_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const SweepSummary& summary);
void render_summary(std::ostream& out, const SweepSummary& summary);

}  // namespace azsweep::sweep
