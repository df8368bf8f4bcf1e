#pragma once

#include <cstdint>
#include <memory>

#include "azsweep/game/othello.hpp"
#include "azsweep/mcts/game_traits.hpp"
#include "azsweep/nn/network.hpp"
#include "azsweep/util/random.hpp"

namespace azsweep::pipeline {

using OthelloEvaluator = mcts::Evaluator<othello::GameState>;

// Network priors (masked to legal moves) and value for the player to move.
class NetworkEvaluator final : public OthelloEvaluator {
 public:
  explicit NetworkEvaluator(const nn::Network& net) : net_(net) {}
  mcts::Evaluation evaluate(const othello::GameState& state) const override;

 private:
  const nn::Network& net_;
};

struct MoveStats {
  std::int64_t simulations = 0;
};

// A stateless move chooser; per-game randomness comes in through `rng`, so one
// instance can serve concurrent games.
class Player {
 public:
  virtual ~Player() = default;
  virtual othello::MoveId choose(const othello::GameState& state, Rng& rng,
                                 MoveStats& stats) const = 0;
};

// Argmax of the search policy (no temperature).
class MctsPlayer final : public Player {
 public:
  MctsPlayer(const OthelloEvaluator& evaluator, mcts::SearchOptions options)
      : evaluator_(evaluator), options_(options) {}
  othello::MoveId choose(const othello::GameState& state, Rng& rng,
                         MoveStats& stats) const override;

 private:
  const OthelloEvaluator& evaluator_;
  mcts::SearchOptions options_;
};

// Uniform over legal moves; the Elo anchor.
class RandomPlayer final : public Player {
 public:
  othello::MoveId choose(const othello::GameState& state, Rng& rng,
                         MoveStats& stats) const override;
};

struct GameRecord {
  othello::GameState final_state;
  int plies = 0;
  std::int64_t simulations = 0;
};

GameRecord play_game(const Player& black, const Player& white, int board_size, Rng& rng);

}  // namespace azsweep::pipeline
