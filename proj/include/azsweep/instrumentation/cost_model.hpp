#pragma once

// Runtime prediction from the loop structure of training:
//
//   t = iteration * ( episode * plies * mctssimu * t_sim                 self-play
//                   + epoch * ceil(retained / batchsize) * t_batch       training
//                   + arenacompare * plies * mctssimu * t_sim )          arena
//
// with retained = min(retrainlength, iteration) * examples_per_iteration, the
// steady-state size of the replay window.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "azsweep/instrumentation/phase_timing.hpp"
#include "azsweep/pipeline/parameters.hpp"

namespace azsweep::instrumentation {

struct Calibration {
  double t_sim_s = 0.0;                // one search simulation
  double t_batch_s = 0.0;              // one optimizer batch
  double avg_plies = 0.0;              // plies per game
  double avg_examples_per_iter = 0.0;  // examples produced per iteration
};

struct TimePrediction {
  double self_play_s = 0.0;
  double train_s = 0.0;
  double arena_s = 0.0;
  double total_s() const { return self_play_s + train_s + arena_s; }
};

// Requires every calibration value to be > 0. `ps.arena_compare` may be 0 here
// to switch the arena term off.
TimePrediction predict_time_breakdown(const pipeline::ParameterSet& ps, const Calibration& calib);
double predict_time(const pipeline::ParameterSet& ps, const Calibration& calib);

// Derives calibration constants from measured iterations (e.g. a one-iteration
// probe run). Arena games count towards the per-simulation and per-ply averages.
Calibration calibrate(std::span<const PhaseBreakdown> rows, double examples_per_iteration);

enum class TimeSensitivity { time_sensitive, time_friendly };

inline constexpr double kSensitivityRatio = 1.25;

std::string_view to_string(TimeSensitivity s);

struct TimeTriple {
  double t_min = 0.0;
  double t_default = 0.0;
  double t_max = 0.0;
};

// time_sensitive iff max/min over the three runs exceeds 1.25.
TimeSensitivity classify(std::string_view parameter, const TimeTriple& times);

struct TimeCostRow {
  std::string parameter;
  TimeTriple hours;
  TimeSensitivity reported;
};

// Measured wall-clock hours of the twelve one-at-a-time runs on 6x6 Othello,
// with the type assigned to each parameter.
const std::vector<TimeCostRow>& reference_time_costs();

}  // namespace azsweep::instrumentation
