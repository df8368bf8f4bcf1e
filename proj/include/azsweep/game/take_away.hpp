#pragma once

// Subtraction game used as a fully solvable search target: players alternately
// remove 1..3 stones and whoever takes the last stone wins. The side to move
// loses exactly when the pile is a multiple of four.

#include <optional>
#include <vector>

#include "azsweep/util/errors.hpp"

namespace azsweep::take_away {

inline constexpr int kMaxTake = 3;

struct State {
  int stones = 0;

  friend bool operator==(const State&, const State&) = default;
};

// Action i removes i + 1 stones.
inline std::vector<int> legal_actions(const State& s) {
  if (s.stones <= 0) throw ContractViolation("take-away: no moves on an empty pile");
  std::vector<int> out;
  for (int take = 1; take <= kMaxTake && take <= s.stones; ++take) out.push_back(take - 1);
  return out;
}

inline State apply(const State& s, int action) {
  const int take = action + 1;
  if (take < 1 || take > kMaxTake || take > s.stones) {
    throw IllegalMove("take-away: illegal action");
  }
  return State{s.stones - take};
}

// Value for the player to move; an empty pile means the opponent just won.
inline std::optional<double> terminal_value(const State& s) {
  if (s.stones == 0) return -1.0;
  return std::nullopt;
}

inline double exact_value(const State& s) { return s.stones % 4 == 0 ? -1.0 : 1.0; }

}  // namespace azsweep::take_away
