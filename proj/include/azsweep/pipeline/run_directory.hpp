#pragma once

// On-disk layout of one training run:
//
//   config.txt          config snapshot (key = value), reproduces the run
//   metrics.csv         one row per iteration; elo is filled in after rating
//   epochs.csv          per-epoch loss terms
//   time_breakdown.csv  per-iteration phase seconds and counters
//   events.jsonl        one JSON object per iteration
//   iter_<k>.ckpt       model trained in iteration k (iter_0 = initial model)
//   best.ckpt           current best model
//   rating_games.csv    rating game log (after rating)
//   elo_curve.csv       rating per accepted checkpoint (after rating)

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "azsweep/instrumentation/phase_timing.hpp"
#include "azsweep/pipeline/coach.hpp"
#include "azsweep/pipeline/rating_games.hpp"

namespace azsweep::pipeline {

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const IterationRecord& r);
void write_epochs_header(std::ostream& out);
void write_epochs_rows(std::ostream& out, const IterationRecord& r);

class RunDirectory final : public RecordSink {
 public:
  RunDirectory(std::filesystem::path root, std::string config_snapshot);

  const std::filesystem::path& root() const { return root_; }

  void on_start(const ParameterSet& ps, const nn::Network& initial) override;
  void on_iteration(const IterationRecord& record, const nn::Network& candidate,
                    const nn::Network& best) override;

  // Writes the rating log and curve and rewrites metrics.csv with elo values.
  void write_rating(std::span<const IterationRecord> records, const RatingOutcome& rating);

 private:
  void append(const std::string& file, const std::string& text) const;

  std::filesystem::path root_;
  std::string config_snapshot_;
  std::vector<instrumentation::PhaseBreakdown> timing_;
};

struct RunOutcome {
  TrainingResult training;
  RatingOutcome rating;
};

// Training followed by the rating pass; records get their elo attached.
// `dir` may be null.
RunOutcome execute_run(const ParameterSet& ps, const CoachOptions& coach,
                       const RatingOptions& rating, RunDirectory* dir);

struct MetricsRow {
  int iteration = 0;
  double loss_pi = 0.0;
  double loss_v = 0.0;
  double loss_total = 0.0;
  int wins = 0;
  int losses = 0;
  int draws = 0;
  bool accepted = false;
  double elo = 0.0;  // NaN when not rated
};

struct EpochRow {
  int iteration = 0;
  int epoch = 0;
  double loss_pi = 0.0;
  double loss_v = 0.0;
  double loss_total = 0.0;
};

// Everything the report and export commands read back. `problems` lists one
// message per missing or unreadable file; loading never modifies the run.
struct RunData {
  std::filesystem::path root;
  std::vector<MetricsRow> metrics;
  std::vector<EpochRow> epochs;
  std::vector<instrumentation::PhaseBreakdown> timing;
  std::vector<rating::EloPoint> elo;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

RunData load_run(const std::filesystem::path& root, bool require_rating = false);

}  // namespace azsweep::pipeline
