#pragma once

#include "azsweep/game/othello.hpp"
#include "azsweep/game/take_away.hpp"
#include "azsweep/mcts/search.hpp"

namespace azsweep::mcts {

template <>
struct GameTraits<othello::GameState> {
  static int action_count(const othello::GameState& s) { return othello::action_count(s.size()); }

  static std::vector<int> legal_actions(const othello::GameState& s) {
    std::vector<int> out;
    for (const auto& m : othello::legal_moves(s)) out.push_back(m.index);
    return out;
  }

  static othello::GameState apply(const othello::GameState& s, int action) {
    return othello::apply_move(s, othello::MoveId{action});
  }

  static std::optional<double> terminal_value(const othello::GameState& s) {
    if (auto o = othello::terminal_value(s, s.to_move())) return othello::as_value(*o);
    return std::nullopt;
  }
};

template <>
struct GameTraits<take_away::State> {
  static int action_count(const take_away::State&) { return take_away::kMaxTake; }
  static std::vector<int> legal_actions(const take_away::State& s) {
    return take_away::legal_actions(s);
  }
  static take_away::State apply(const take_away::State& s, int a) { return take_away::apply(s, a); }
  static std::optional<double> terminal_value(const take_away::State& s) {
    return take_away::terminal_value(s);
  }
};

}  // namespace azsweep::mcts
