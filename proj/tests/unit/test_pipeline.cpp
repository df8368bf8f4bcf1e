#include <gtest/gtest.h>

#include <cmath>

#include "azsweep/pipeline/arena.hpp"
#include "azsweep/pipeline/coach.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/pipeline/rating_games.hpp"
#include "azsweep/pipeline/replay_buffer.hpp"
#include "azsweep/pipeline/self_play.hpp"
#include "support/minimax.hpp"

namespace azsweep::pipeline {
namespace {

ParameterSet tiny(std::uint64_t seed = 1) {
  ParameterSet ps;
  ps.board_size = 4;
  ps.iteration = 3;
  ps.episode = 3;
  ps.mcts_simulations = 8;
  ps.arena_compare = 4;
  ps.epoch = 2;
  ps.batch_size = 16;
  ps.retrain_length = 2;
  ps.seed = seed;
  return ps;
}

CoachOptions tiny_coach() {
  CoachOptions o;
  o.network = nn::NetworkConfig::for_board(4);
  o.network.hidden_layers = {32, 32};
  return o;
}

std::vector<nn::TrainingExample> tagged(int n, double tag) {
  std::vector<nn::TrainingExample> out(static_cast<std::size_t>(n));
  for (auto& ex : out) ex.outcome = tag;
  return out;
}

TEST(Parameters, DefaultsValidate) { EXPECT_NO_THROW(ParameterSet{}.validate()); }

TEST(Parameters, ValidationNamesTheKey) {
  auto expect_key = [](ParameterSet ps, const std::string& key) {
    try {
      ps.validate();
      ADD_FAILURE() << "no error for " << key;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.key(), key);
    }
  };
  ParameterSet ps;
  ps.update_threshold = 1.5;
  expect_key(ps, "updateThreshold");
  ps = {};
  ps.update_threshold = 0.0;
  expect_key(ps, "updateThreshold");
  ps = {};
  ps.dropout = 1.0;
  expect_key(ps, "dropout");
  ps = {};
  ps.episode = 0;
  expect_key(ps, "episode");
  ps = {};
  ps.cpuct = -1;
  expect_key(ps, "Cpuct");
  ps = {};
  ps.learning_rate = 0;
  expect_key(ps, "learningrate");
  ps = {};
  ps.board_size = 5;
  expect_key(ps, "game");
}

TEST(Parameters, GetSetByName) {
  ParameterSet ps;
  for (const auto& spec : kParameters) {
    const double v = get_parameter(ps, spec.key);
    set_parameter(ps, spec.key, spec.kind == ParameterKind::count ? v + 1 : v * 0.5);
    EXPECT_NE(get_parameter(ps, spec.key), v) << spec.key;
  }
  EXPECT_THROW(set_parameter(ps, "episode", 2.5), ConfigError);
  EXPECT_THROW(get_parameter(ps, "nope"), ConfigError);
  EXPECT_EQ(format_parameter_value("episode", 50), "50");
  EXPECT_EQ(format_parameter_value("learningrate", 0.005), "0.005");
}

TEST(ReplayBuffer, KeepsTheLastCapacityLists) {
  for (int capacity : {1, 3, 20}) {
    ReplayBuffer buffer(capacity);
    for (int it = 1; it <= 25; ++it) {
      buffer.update(it, tagged(it, it));
      const int kept = std::min(it, capacity);
      ASSERT_EQ(buffer.list_count(), static_cast<std::size_t>(kept));
      std::vector<int> expected;
      std::size_t examples = 0;
      for (int k = it - kept + 1; k <= it; ++k) {
        expected.push_back(k);
        examples += static_cast<std::size_t>(k);
      }
      EXPECT_EQ(buffer.iterations(), expected);
      EXPECT_EQ(buffer.example_count(), examples);
      const auto flat = buffer.flatten();
      ASSERT_EQ(flat.size(), examples);
      EXPECT_EQ(flat.front().outcome, it - kept + 1);
      EXPECT_EQ(flat.back().outcome, it);
    }
  }
  EXPECT_THROW(ReplayBuffer(0), ContractViolation);
}

TEST(Arena, AcceptanceBoundaries) {
  EXPECT_TRUE(accept_model(6, 4, 0, 0.6));
  EXPECT_FALSE(accept_model(5, 4, 1, 0.6));
  EXPECT_TRUE(accept_model(3, 2, 35, 0.6));  // draws excluded
  EXPECT_FALSE(accept_model(0, 0, 40, 0.6));
  EXPECT_TRUE(accept_model(1, 0, 0, 0.99));
  EXPECT_FALSE(accept_model(0, 1, 0, 0.01));
}

TEST(Arena, IdenticalModelsMirror) {
  // Deterministic argmax players: the same model on both sides replays the
  // same game twice with colors swapped, so results cancel.
  const nn::Network net(nn::NetworkConfig::for_board(4), 3);
  ParameterSet ps = tiny();
  ps.arena_compare = 6;
  const MatchResult r = arena(net, net, ps);
  EXPECT_EQ(r.games(), 6);
  EXPECT_EQ(r.wins, r.losses);
  EXPECT_EQ(r.scores.size(), 6u);
}

TEST(Arena, ColorsAlternate) {
  // Score of the black side is independent of which wrapper plays it.
  const RandomPlayer random;
  const MatchResult r = play_match(random, random, 10, 4, 99);
  EXPECT_EQ(r.games(), 10);
  const MatchResult again = play_match(random, random, 10, 4, 99, 3);
  EXPECT_EQ(r.scores, again.scores);  // thread count does not matter
}

TEST(Arena, OracleBeatsRandom) {
  testing::MinimaxSolver solver;
  const testing::ExactEvaluator oracle(solver);
  const MctsPlayer strong(oracle, {1.0, 50});
  const RandomPlayer random;
  const MatchResult r = play_match(strong, random, 20, 4, 5);
  EXPECT_GE(r.wins, 18) << r.wins << "-" << r.losses << "-" << r.draws;
}

TEST(SelfPlay, OutcomesFollowTheFinalResult) {
  const mcts::UniformEvaluator<othello::GameState> eval;
  ParameterSet ps = tiny();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Episode ep = execute_episode(eval, ps, rng);
    ASSERT_TRUE(ep.final_state.is_terminal());
    ASSERT_EQ(ep.examples.size(), static_cast<std::size_t>(ep.plies));
    const auto black = othello::terminal_value(ep.final_state, othello::Player::black);
    ASSERT_TRUE(black.has_value());
    const double z0 = othello::as_value(*black);
    for (std::size_t k = 0; k < ep.examples.size(); ++k) {
      // Plies (passes included) alternate the player to move, starting with black.
      EXPECT_EQ(ep.examples[k].outcome, k % 2 == 0 ? z0 : -z0);
      double mass = 0.0;
      for (double p : ep.examples[k].policy) mass += p;
      EXPECT_NEAR(mass, 1.0, 1e-12);
    }
  }
}

TEST(SelfPlay, AugmentationMultipliesExamples) {
  const mcts::UniformEvaluator<othello::GameState> eval;
  ParameterSet ps = tiny();
  Rng a(4);
  Rng b(4);
  const Episode plain = execute_episode(eval, ps, a);
  const Episode aug = execute_episode(eval, ps, b, {true});
  EXPECT_EQ(aug.examples.size(), 8 * plain.examples.size());
}

TEST(Coach, SmokeRunProducesRecords) {
  const ParameterSet ps = tiny();
  const TrainingResult r = run_training(ps, tiny_coach());
  ASSERT_EQ(r.records.size(), 3u);
  ASSERT_FALSE(r.accepted.empty());
  EXPECT_EQ(r.accepted.front().iteration, 0);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const IterationRecord& rec = r.records[i];
    EXPECT_EQ(rec.iteration, static_cast<int>(i) + 1);
    EXPECT_EQ(rec.epoch_loss.size(), 2u);
    EXPECT_EQ(rec.wins + rec.losses + rec.draws, 4);
    EXPECT_EQ(rec.accepted, accept_model(rec.wins, rec.losses, rec.draws, ps.update_threshold));
    EXPECT_LE(rec.retained_iterations.size(), 2u);
    EXPECT_EQ(rec.retained_iterations.back(), rec.iteration);
    EXPECT_GT(rec.timing.total_s, 0.0);
    EXPECT_EQ(rec.timing.phase_counters(instrumentation::Phase::self_play).episodes, 3);
    EXPECT_TRUE(std::isfinite(rec.mean_loss().total));
  }
  EXPECT_EQ(fingerprint(r.best), r.records.back().best_fingerprint);
}

TEST(Coach, DeterministicForASeed) {
  const TrainingResult a = run_training(tiny(7), tiny_coach());
  const TrainingResult b = run_training(tiny(7), tiny_coach());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].best_fingerprint, b.records[i].best_fingerprint);
    EXPECT_EQ(a.records[i].wins, b.records[i].wins);
    EXPECT_EQ(a.records[i].mean_loss().total, b.records[i].mean_loss().total);
  }
  EXPECT_EQ(a.best, b.best);
}

TEST(Coach, SelfPlayUsesTheCurrentBest) {
  ParameterSet ps = tiny(3);
  ps.iteration = 5;
  ps.update_threshold = 0.9;  // make rejections likely
  const TrainingResult r = run_training(ps, tiny_coach());
  const std::uint64_t initial = fingerprint(initial_network(ps, tiny_coach()));
  std::uint64_t best = initial;
  for (const IterationRecord& rec : r.records) {
    EXPECT_EQ(rec.self_play_fingerprint, best);
    if (!rec.accepted) {
      EXPECT_EQ(rec.best_fingerprint, best);
    } else {
      EXPECT_NE(rec.best_fingerprint, best);
    }
    best = rec.best_fingerprint;
  }
  std::size_t accepted = 0;
  for (const IterationRecord& rec : r.records) accepted += rec.accepted;
  EXPECT_EQ(r.accepted.size(), accepted + 1);
}

TEST(Coach, RejectsBoardMismatch) {
  ParameterSet ps = tiny();
  CoachOptions o = tiny_coach();
  o.network = nn::NetworkConfig::for_board(6);
  EXPECT_THROW(run_training(ps, o), ConfigError);
}

TEST(Rating, CheckpointsAreRatedAgainstAnchorAndPredecessor) {
  ParameterSet ps = tiny();
  ps.mcts_simulations = 4;
  const nn::Network a(nn::NetworkConfig::for_board(4), 1);
  const nn::Network b(nn::NetworkConfig::for_board(4), 2);
  const std::vector<AcceptedCheckpoint> cps{{0, a}, {2, b}};
  RatingOptions options;
  options.games_vs_anchor = 4;
  options.games_vs_previous = 2;
  const RatingOutcome out = rate_checkpoints(cps, ps, options);
  // iter_0 has no predecessor.
  EXPECT_EQ(out.log.size(), 4u + 4u + 2u);
  ASSERT_EQ(out.curve.size(), 2u);
  EXPECT_EQ(out.curve[0].iteration, 0);
  EXPECT_EQ(out.curve[1].iteration, 2);

  std::vector<IterationRecord> records(3);
  for (int i = 0; i < 3; ++i) records[static_cast<std::size_t>(i)].iteration = i + 1;
  attach_elo(records, out.curve);
  EXPECT_EQ(records[0].elo, out.curve[0].rating);
  EXPECT_EQ(records[1].elo, out.curve[1].rating);
  EXPECT_EQ(records[2].elo, out.curve[1].rating);

  const std::vector<AcceptedCheckpoint> unordered{{2, b}, {0, a}};
  EXPECT_THROW(rate_checkpoints(unordered, ps, options), ContractViolation);
}

}  // namespace
}  // namespace azsweep::pipeline
