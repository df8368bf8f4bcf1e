#include "azsweep/instrumentation/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::instrumentation {

TimePrediction predict_time_breakdown(const pipeline::ParameterSet& ps, const Calibration& c) {
  if (!(c.t_sim_s > 0.0 && c.t_batch_s > 0.0 && c.avg_plies > 0.0 && c.avg_examples_per_iter > 0.0)) {
    throw ContractViolation("calibration values must be positive");
  }
  const double iterations = ps.iteration;
  const double window = std::min(ps.retrain_length, ps.iteration);
  const double retained = window * c.avg_examples_per_iter;
  const double batches = std::ceil(retained / ps.batch_size);
  TimePrediction p;
  p.self_play_s = iterations * ps.episode * c.avg_plies * ps.mcts_simulations * c.t_sim_s;
  p.train_s = iterations * ps.epoch * batches * c.t_batch_s;
  p.arena_s = iterations * ps.arena_compare * c.avg_plies * ps.mcts_simulations * c.t_sim_s;
  return p;
}

double predict_time(const pipeline::ParameterSet& ps, const Calibration& calib) {
  return predict_time_breakdown(ps, calib).total_s();
}

Calibration calibrate(std::span<const PhaseBreakdown> rows, double examples_per_iteration) {
  double search_s = 0.0;
  double train_s = 0.0;
  double sims = 0.0;
  double plies = 0.0;
  double games = 0.0;
  double batches = 0.0;
  for (const PhaseBreakdown& r : rows) {
    search_s += r.phase_seconds(Phase::self_play) + r.phase_seconds(Phase::arena);
    train_s += r.phase_seconds(Phase::train);
    for (Phase p : {Phase::self_play, Phase::arena}) {
      const PhaseCounters& c = r.phase_counters(p);
      sims += static_cast<double>(c.simulations);
      plies += static_cast<double>(c.plies);
      games += static_cast<double>(c.episodes);
    }
    batches += static_cast<double>(r.phase_counters(Phase::train).batches);
  }
  if (sims <= 0 || games <= 0 || batches <= 0) {
    throw ContractViolation("calibration needs at least one game and one batch");
  }
  return {search_s / sims, train_s / batches, plies / games, examples_per_iteration};
}

std::string_view to_string(TimeSensitivity s) {
  return s == TimeSensitivity::time_sensitive ? "time-sensitive" : "time-friendly";
}

TimeSensitivity classify(std::string_view parameter, const TimeTriple& t) {
  if (!(t.t_min > 0.0 && t.t_default > 0.0 && t.t_max > 0.0)) {
    throw ContractViolation(fmt::format("{}: times must be positive", parameter));
  }
  const double hi = std::max({t.t_min, t.t_default, t.t_max});
  const double lo = std::min({t.t_min, t.t_default, t.t_max});
  return hi / lo > kSensitivityRatio ? TimeSensitivity::time_sensitive
                                     : TimeSensitivity::time_friendly;
}

const std::vector<TimeCostRow>& reference_time_costs() {
  using enum TimeSensitivity;
  static const std::vector<TimeCostRow> rows{
      {"iteration", {23.8, 44.0, 60.3}, time_sensitive},
      {"episode", {17.4, 44.0, 87.7}, time_sensitive},
      {"tempThreshold", {41.6, 44.0, 40.4}, time_friendly},
      {"mctssimu", {26.0, 44.0, 64.8}, time_sensitive},
      {"Cpuct", {50.7, 44.0, 49.1}, time_friendly},
      {"retrainlength", {26.5, 44.0, 50.7}, time_sensitive},
      {"epoch", {43.4, 44.0, 55.7}, time_sensitive},
      {"batchsize", {47.7, 44.0, 37.7}, time_sensitive},
      {"learningrate", {47.8, 44.0, 40.3}, time_friendly},
      {"dropout", {51.9, 44.0, 51.4}, time_friendly},
      {"arenacompare", {33.5, 44.0, 57.4}, time_sensitive},
      {"updateThreshold", {39.7, 44.0, 40.4}, time_friendly},
  };
  return rows;
}

}  // namespace azsweep::instrumentation
