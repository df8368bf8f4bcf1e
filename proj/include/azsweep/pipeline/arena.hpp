#pragma once

#include <cstdint>
#include <vector>

#include "azsweep/nn/network.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/pipeline/players.hpp"

namespace azsweep::pipeline {

struct MatchResult {
  int wins = 0;  // from player A's side
  int losses = 0;
  int draws = 0;
  std::int64_t plies = 0;
  std::int64_t simulations = 0;
  std::vector<double> scores;  // per game for A: 1, 0.5 or 0

  int games() const { return wins + losses + draws; }
};

// Plays `games` games; A takes black in games 0, 2, 4, ... (the first, third,
// ... game) and white otherwise. Game g draws its randomness from
// derive_seed({seed, g}), so results do not depend on `threads`.
MatchResult play_match(const Player& a, const Player& b, int games, int board_size,
                       std::uint64_t seed, int threads = 1);

// Candidate vs incumbent with the self-play search budget; both sides take
// the argmax of their own search policy.
MatchResult arena(const nn::Network& candidate, const nn::Network& incumbent,
                  const ParameterSet& ps, int threads = 1);

// wins / (wins + losses) >= threshold; draws are excluded and an arena with
// no decisive game rejects.
bool accept_model(int wins, int losses, int draws, double update_threshold);

}  // namespace azsweep::pipeline
