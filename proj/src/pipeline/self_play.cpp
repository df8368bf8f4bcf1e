#include "azsweep/pipeline/self_play.hpp"

namespace azsweep::pipeline {

Episode execute_episode(const OthelloEvaluator& evaluator, const ParameterSet& ps, Rng& rng,
                        const EpisodeOptions& options) {
  struct Ply {
    othello::GameState state;
    std::vector<double> policy;
  };
  std::vector<Ply> history;
  othello::GameState state = othello::GameState::initial(ps.board_size);
  const mcts::SearchOptions search_options{ps.cpuct, ps.mcts_simulations};
  Episode episode{{}, state};

  int step = 0;
  while (!state.is_terminal()) {
    mcts::SearchResult r = mcts::search(state, evaluator, search_options);
    episode.simulations += ps.mcts_simulations;
    const int action = mcts::select_action(r.policy, step, ps.temp_threshold, rng);
    history.push_back({state, std::move(r.policy)});
    state = othello::apply_move(state, othello::MoveId{action});
    ++step;
  }
  episode.plies = step;
  episode.final_state = state;

  for (const Ply& ply : history) {
    const double z = othello::as_value(*othello::terminal_value(state, ply.state.to_move()));
    if (options.augment) {
      for (auto& [s, p] : othello::symmetries(ply.state, ply.policy)) {
        episode.examples.push_back({othello::encode(s), std::move(p), z});
      }
    } else {
      episode.examples.push_back({othello::encode(ply.state), ply.policy, z});
    }
  }
  return episode;
}

}  // namespace azsweep::pipeline
