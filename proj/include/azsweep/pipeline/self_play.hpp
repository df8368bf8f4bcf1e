#pragma once

#include <cstdint>
#include <vector>

#include "azsweep/nn/network.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/pipeline/players.hpp"

namespace azsweep::pipeline {

struct EpisodeOptions {
  bool augment = false;  // add the 8 dihedral copies of every example
};

struct Episode {
  std::vector<nn::TrainingExample> examples;
  othello::GameState final_state;
  int plies = 0;
  std::int64_t simulations = 0;
};

// One self-play game: a fresh search at every ply, moves sampled from pi for
// the first tempThreshold plies (counted from 0) and argmax afterwards. Each
// ply's example gets z = final outcome for the player to move at that ply.
Episode execute_episode(const OthelloEvaluator& evaluator, const ParameterSet& ps, Rng& rng,
                        const EpisodeOptions& options = {});

}  // namespace azsweep::pipeline
