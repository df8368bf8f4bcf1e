#pragma once

// Exhaustive game-theoretic solver for small Othello boards, kept on the test
// side as an independent oracle for the search and self-play code.

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "azsweep/game/othello.hpp"
#include "azsweep/mcts/game_traits.hpp"

namespace azsweep::testing {

struct Solved {
  int value = 0;  // +1 / 0 / -1 for the player to move under perfect play
  int depth = 0;  // longest remaining game in plies
};

class MinimaxSolver {
 public:
  Solved solve(const othello::GameState& s) {
    const Key k = key(s);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    Solved out;
    if (auto t = othello::terminal_value(s, s.to_move())) {
      out = {static_cast<int>(othello::as_value(*t)), 0};
    } else {
      out.value = -2;
      for (const auto& m : othello::legal_moves(s)) {
        const Solved child = solve(othello::apply_move(s, m));
        out.value = std::max(out.value, -child.value);
        out.depth = std::max(out.depth, child.depth + 1);
      }
    }
    memo_.emplace(k, out);
    return out;
  }

  int value(const othello::GameState& s) { return solve(s).value; }

  // Move indices achieving the minimax value.
  std::vector<int> optimal_moves(const othello::GameState& s) {
    const int v = value(s);
    std::vector<int> out;
    for (const auto& m : othello::legal_moves(s)) {
      if (-value(othello::apply_move(s, m)) == v) out.push_back(m.index);
    }
    return out;
  }

  std::size_t size() const { return memo_.size(); }

 private:
  struct Key {
    std::uint64_t black, white;
    int meta;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.black * 0x9e3779b97f4a7c15ULL;
      h ^= k.white + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::uint64_t>(k.meta) * 0xbf58476d1ce4e5b9ULL;
      return static_cast<std::size_t>(h);
    }
  };

  static Key key(const othello::GameState& s) {
    const int meta = (s.to_move() == othello::Player::black ? 0 : 1) | (s.consecutive_passes() << 1) |
                     (s.size() << 4);
    return {s.bits(othello::Player::black), s.bits(othello::Player::white), meta};
  }

  std::unordered_map<Key, Solved, KeyHash> memo_;
};

// Uniform priors and the exact value of the position.
class ExactEvaluator final : public mcts::Evaluator<othello::GameState> {
 public:
  explicit ExactEvaluator(MinimaxSolver& solver) : solver_(solver) {}

  mcts::Evaluation evaluate(const othello::GameState& s) const override {
    const int n = othello::action_count(s.size());
    return {std::vector<double>(static_cast<std::size_t>(n), 1.0),
            static_cast<double>(solver_.value(s))};
  }

 private:
  MinimaxSolver& solver_;
};

// Every non-terminal position reachable from the start, in breadth-first
// discovery order.
inline std::vector<othello::GameState> reachable_positions(int board_size, int max_plies) {
  using Id = std::tuple<std::uint64_t, std::uint64_t, int, int>;
  auto id = [](const othello::GameState& s) {
    return Id{s.bits(othello::Player::black), s.bits(othello::Player::white),
              static_cast<int>(s.to_move()), s.consecutive_passes()};
  };
  std::vector<othello::GameState> frontier{othello::GameState::initial(board_size)};
  std::set<Id> seen{id(frontier.front())};
  std::vector<othello::GameState> out;
  for (int ply = 0; ply <= max_plies && !frontier.empty(); ++ply) {
    std::vector<othello::GameState> next;
    for (const auto& s : frontier) {
      if (s.is_terminal()) continue;
      out.push_back(s);
      if (ply == max_plies) continue;
      for (const auto& m : othello::legal_moves(s)) {
        othello::GameState c = othello::apply_move(s, m);
        if (seen.insert(id(c)).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace azsweep::testing
