#pragma once

#include <span>
#include <vector>

#include "azsweep/pipeline/coach.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/rating/elo.hpp"

namespace azsweep::pipeline {

struct RatingOptions {
  int games_vs_anchor = 20;
  int games_vs_previous = 20;
  rating::KPolicy k_policy{};
  int threads = 1;
};

struct RatingOutcome {
  std::vector<rating::GameResult> log;  // chronological
  std::vector<rating::EloPoint> curve;  // one point per accepted checkpoint
};

// Each checkpoint, in order, plays the uniform-random anchor and then the
// previous accepted checkpoint, both sides searching with the run's budget.
// Games are applied in (checkpoint, game index) order.
RatingOutcome rate_checkpoints(std::span<const AcceptedCheckpoint> checkpoints,
                               const ParameterSet& ps, const RatingOptions& options = {});

// Sets each record's elo to the rating of the best model after that iteration.
void attach_elo(std::span<IterationRecord> records, std::span<const rating::EloPoint> curve);

}  // namespace azsweep::pipeline
