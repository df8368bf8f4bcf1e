#include "azsweep/pipeline/arena.hpp"

#include <vector>

#include "azsweep/util/errors.hpp"
#include "azsweep/util/parallel.hpp"

namespace azsweep::pipeline {

MatchResult play_match(const Player& a, const Player& b, int games, int board_size,
                       std::uint64_t seed, int threads) {
  if (games < 0) throw ContractViolation("negative game count");
  std::vector<GameRecord> records(static_cast<std::size_t>(games),
                                  GameRecord{othello::GameState::initial(board_size)});
  parallel_for(records.size(), threads, [&](std::size_t g) {
    Rng rng(derive_seed({seed, static_cast<std::uint64_t>(g)}));
    const bool a_black = g % 2 == 0;
    records[g] = a_black ? play_game(a, b, board_size, rng) : play_game(b, a, board_size, rng);
  });

  MatchResult out;
  for (std::size_t g = 0; g < records.size(); ++g) {
    const auto a_colour = g % 2 == 0 ? othello::Player::black : othello::Player::white;
    const auto outcome = othello::terminal_value(records[g].final_state, a_colour);
    switch (*outcome) {
      case othello::Outcome::win: ++out.wins; out.scores.push_back(1.0); break;
      case othello::Outcome::loss: ++out.losses; out.scores.push_back(0.0); break;
      case othello::Outcome::draw: ++out.draws; out.scores.push_back(0.5); break;
    }
    out.plies += records[g].plies;
    out.simulations += records[g].simulations;
  }
  return out;
}

MatchResult arena(const nn::Network& candidate, const nn::Network& incumbent,
                  const ParameterSet& ps, int threads) {
  const NetworkEvaluator cand_eval(candidate);
  const NetworkEvaluator inc_eval(incumbent);
  const mcts::SearchOptions options{ps.cpuct, ps.mcts_simulations};
  const MctsPlayer cand(cand_eval, options);
  const MctsPlayer inc(inc_eval, options);
  return play_match(cand, inc, ps.arena_compare, ps.board_size,
                    derive_seed({ps.seed, 0xa7e4a}), threads);
}

bool accept_model(int wins, int losses, int draws, double update_threshold) {
  if (wins < 0 || losses < 0 || draws < 0) throw ContractViolation("negative arena counts");
  const int decisive = wins + losses;
  if (decisive == 0) return false;
  return static_cast<double>(wins) / decisive >= update_threshold;
}

}  // namespace azsweep::pipeline
