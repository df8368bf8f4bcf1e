#include "azsweep/pipeline/rating_games.hpp"

#include <string>

#include "azsweep/pipeline/arena.hpp"
#include "azsweep/pipeline/players.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::pipeline {

namespace {

constexpr std::uint64_t kRatingTag = 0xe10;

void append_games(std::vector<rating::GameResult>& log, const std::string& a,
                  const std::string& b, const MatchResult& match) {
  for (double s : match.scores) log.push_back({a, b, s});
}

}  // namespace

RatingOutcome rate_checkpoints(std::span<const AcceptedCheckpoint> checkpoints,
                               const ParameterSet& ps, const RatingOptions& options) {
  const mcts::SearchOptions search{ps.cpuct, ps.mcts_simulations};
  const RandomPlayer anchor;
  RatingOutcome out;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const AcceptedCheckpoint& cp = checkpoints[i];
    if (i > 0 && cp.iteration <= checkpoints[i - 1].iteration) {
      throw ContractViolation("checkpoints must be in increasing iteration order");
    }
    ids.push_back(rating::checkpoint_id(cp.iteration));
    const auto it = static_cast<std::uint64_t>(cp.iteration);

    const NetworkEvaluator eval(cp.model);
    const MctsPlayer player(eval, search);
    append_games(out.log, ids.back(), std::string(rating::kAnchorId),
                 play_match(player, anchor, options.games_vs_anchor, ps.board_size,
                            derive_seed({ps.seed, kRatingTag, it, 0}), options.threads));
    if (i > 0) {
      const NetworkEvaluator prev_eval(checkpoints[i - 1].model);
      const MctsPlayer prev(prev_eval, search);
      append_games(out.log, ids.back(), ids[i - 1],
                   play_match(player, prev, options.games_vs_previous, ps.board_size,
                              derive_seed({ps.seed, kRatingTag, it, 1}), options.threads));
    }
  }
  const auto rated = rating::rate_run(out.log, ids, options.k_policy);
  for (std::size_t i = 0; i < rated.size(); ++i) {
    out.curve.push_back({checkpoints[i].iteration, rated[i].rating});
  }
  return out;
}

void attach_elo(std::span<IterationRecord> records, std::span<const rating::EloPoint> curve) {
  for (IterationRecord& r : records) {
    for (const rating::EloPoint& p : curve) {
      if (p.iteration <= r.iteration) r.elo = p.rating;
    }
  }
}

}  // namespace azsweep::pipeline
