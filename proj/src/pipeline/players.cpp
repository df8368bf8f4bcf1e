#include "azsweep/pipeline/players.hpp"

namespace azsweep::pipeline {

mcts::Evaluation NetworkEvaluator::evaluate(const othello::GameState& state) const {
  const auto legal = mcts::GameTraits<othello::GameState>::legal_actions(state);
  nn::Prediction p = net_.predict(othello::encode(state), legal);
  return {std::move(p.policy), p.value};
}

othello::MoveId MctsPlayer::choose(const othello::GameState& state, Rng& /*rng*/,
                                   MoveStats& stats) const {
  const mcts::SearchResult r = mcts::search(state, evaluator_, options_);
  stats.simulations += options_.simulations;
  return othello::MoveId{mcts::argmax_action(r.policy)};
}

othello::MoveId RandomPlayer::choose(const othello::GameState& state, Rng& rng,
                                     MoveStats& /*stats*/) const {
  const auto moves = othello::legal_moves(state);
  return moves[uniform_index(rng, moves.size())];
}

GameRecord play_game(const Player& black, const Player& white, int board_size, Rng& rng) {
  othello::GameState state = othello::GameState::initial(board_size);
  GameRecord record{state};
  MoveStats stats;
  while (!state.is_terminal()) {
    const Player& mover = state.to_move() == othello::Player::black ? black : white;
    state = othello::apply_move(state, mover.choose(state, rng, stats));
    ++record.plies;
  }
  record.final_state = state;
  record.simulations = stats.simulations;
  return record;
}

}  // namespace azsweep::pipeline
