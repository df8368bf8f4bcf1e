#include "azsweep/pipeline/run_directory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "azsweep/nn/checkpoint.hpp"
#include "azsweep/util/csv.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::pipeline {

namespace fs = std::filesystem;
using instrumentation::Phase;

namespace {

std::string number(double v) { return std::isnan(v) ? std::string() : fmt::format("{:.17g}", v); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
}

}  // namespace

void write_metrics_header(std::ostream& out) {
  out << "iteration,loss_pi,loss_v,loss_total,wins,losses,draws,accepted,examples_new,"
         "examples_trained,buffer_lists,elo\n";
}

void write_metrics_row(std::ostream& out, const IterationRecord& r) {
  const nn::LossTerms m = r.mean_loss();
  out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.iteration, number(m.policy),
                     number(m.value), number(m.total), r.wins, r.losses, r.draws,
                     r.accepted ? 1 : 0, r.examples_new, r.examples_trained,
                     r.retained_iterations.size(), number(r.elo));
}

void write_epochs_header(std::ostream& out) {
  out << "iteration,epoch,loss_pi,loss_v,loss_total\n";
}

void write_epochs_rows(std::ostream& out, const IterationRecord& r) {
  for (std::size_t e = 0; e < r.epoch_loss.size(); ++e) {
    const nn::LossTerms& l = r.epoch_loss[e];
    out << fmt::format("{},{},{},{},{}\n", r.iteration, e + 1, number(l.policy), number(l.value),
                       number(l.total));
  }
}

RunDirectory::RunDirectory(fs::path root, std::string config_snapshot)
    : root_(std::move(root)), config_snapshot_(std::move(config_snapshot)) {}

void RunDirectory::append(const std::string& file, const std::string& text) const {
  std::ofstream out(root_ / file, std::ios::binary | std::ios::app);
  out << text;
  if (!out) throw FormatError(fmt::format("cannot append to {}", (root_ / file).string()));
}

void RunDirectory::on_start(const ParameterSet& /*ps*/, const nn::Network& initial) {
  fs::create_directories(root_);
  write_file(root_ / "config.txt", config_snapshot_);
  std::ostringstream metrics;
  write_metrics_header(metrics);
  write_file(root_ / "metrics.csv", metrics.str());
  std::ostringstream epochs;
  write_epochs_header(epochs);
  write_file(root_ / "epochs.csv", epochs.str());
  std::ostringstream timing;
  instrumentation::write_breakdown_csv(timing, {});
  write_file(root_ / "time_breakdown.csv", timing.str());
  write_file(root_ / "events.jsonl", "");
  for (const char* stale : {"rating_games.csv", "elo_curve.csv"}) fs::remove(root_ / stale);
  timing_.clear();
  nn::save_checkpoint(initial, root_ / "iter_0.ckpt");
  nn::save_checkpoint(initial, root_ / "best.ckpt");
}

void RunDirectory::on_iteration(const IterationRecord& r, const nn::Network& candidate,
                                const nn::Network& best) {
  std::ostringstream metrics;
  write_metrics_row(metrics, r);
  append("metrics.csv", metrics.str());
  std::ostringstream epochs;
  write_epochs_rows(epochs, r);
  append("epochs.csv", epochs.str());

  timing_.push_back(r.timing);
  std::ostringstream timing;
  instrumentation::write_breakdown_csv(timing, timing_);
  write_file(root_ / "time_breakdown.csv", timing.str());

  const nn::LossTerms m = r.mean_loss();
  nlohmann::json event{
      {"iteration", r.iteration},
      {"loss", {{"pi", m.policy}, {"v", m.value}, {"total", m.total}}},
      {"arena", {{"wins", r.wins}, {"losses", r.losses}, {"draws", r.draws}}},
      {"accepted", r.accepted},
      {"examples_new", r.examples_new},
      {"examples_trained", r.examples_trained},
      {"retained_iterations", r.retained_iterations},
      {"seconds",
       {{"self_play", r.timing.phase_seconds(Phase::self_play)},
        {"train", r.timing.phase_seconds(Phase::train)},
        {"arena", r.timing.phase_seconds(Phase::arena)},
        {"total", r.timing.total_s}}},
  };
  append("events.jsonl", event.dump() + "\n");

  nn::save_checkpoint(candidate, root_ / fmt::format("iter_{}.ckpt", r.iteration));
  nn::save_checkpoint(best, root_ / "best.ckpt");
}

void RunDirectory::write_rating(std::span<const IterationRecord> records,
                                const RatingOutcome& rating) {
  std::ostringstream games;
  rating::write_game_log(games, rating.log);
  write_file(root_ / "rating_games.csv", games.str());
  std::ostringstream curve;
  rating::write_elo_curve(curve, rating.curve);
  write_file(root_ / "elo_curve.csv", curve.str());
  std::ostringstream metrics;
  write_metrics_header(metrics);
  for (const IterationRecord& r : records) write_metrics_row(metrics, r);
  write_file(root_ / "metrics.csv", metrics.str());
}

RunOutcome execute_run(const ParameterSet& ps, const CoachOptions& coach,
                       const RatingOptions& rating, RunDirectory* dir) {
  std::vector<RecordSink*> sinks;
  if (dir) sinks.push_back(dir);
  TrainingResult training = run_training(ps, coach, sinks);
  RatingOutcome rated = rate_checkpoints(training.accepted, ps, rating);
  attach_elo(training.records, rated.curve);
  if (dir) dir->write_rating(training.records, rated);
  return {std::move(training), std::move(rated)};
}

RunData load_run(const fs::path& root, bool require_rating) {
  RunData data;
  data.root = root;
  auto with_file = [&](const char* name, bool required, auto&& fn) {
    const fs::path path = root / name;
    if (!fs::exists(path)) {
      if (required) data.problems.push_back(fmt::format("{}: missing", path.string()));
      return;
    }
    std::ifstream in(path, std::ios::binary);
    try {
      fn(in);
    } catch (const std::exception& e) {
      data.problems.push_back(fmt::format("{}: {}", path.string(), e.what()));
    }
  };

  with_file("metrics.csv", true, [&](std::istream& in) {
    const CsvTable t = read_csv(in);
    t.require_columns({"iteration", "loss_pi", "loss_v", "loss_total", "wins", "losses", "draws",
                       "accepted", "elo"});
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      data.metrics.push_back({static_cast<int>(t.get_int(r, "iteration")),
                              t.get_double(r, "loss_pi"), t.get_double(r, "loss_v"),
                              t.get_double(r, "loss_total"), static_cast<int>(t.get_int(r, "wins")),
                              static_cast<int>(t.get_int(r, "losses")),
                              static_cast<int>(t.get_int(r, "draws")),
                              t.get_int(r, "accepted") != 0, t.get_double(r, "elo")});
    }
  });
  with_file("epochs.csv", true, [&](std::istream& in) {
    const CsvTable t = read_csv(in);
    t.require_columns({"iteration", "epoch", "loss_pi", "loss_v", "loss_total"});
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      data.epochs.push_back({static_cast<int>(t.get_int(r, "iteration")),
                             static_cast<int>(t.get_int(r, "epoch")), t.get_double(r, "loss_pi"),
                             t.get_double(r, "loss_v"), t.get_double(r, "loss_total")});
    }
  });
  with_file("time_breakdown.csv", true,
            [&](std::istream& in) { data.timing = instrumentation::read_breakdown_csv(in); });
  with_file("elo_curve.csv", require_rating,
            [&](std::istream& in) { data.elo = rating::read_elo_curve(in); });
  return data;
}

}  // namespace azsweep::pipeline
