#include "azsweep/pipeline/coach.hpp"

#include <bit>
#include <cstring>
#include <iostream>

#include <fmt/format.h>

#include "azsweep/pipeline/arena.hpp"
#include "azsweep/pipeline/replay_buffer.hpp"
#include "azsweep/pipeline/self_play.hpp"
#include "azsweep/util/errors.hpp"
#include "azsweep/util/parallel.hpp"
#include "azsweep/util/random.hpp"

namespace azsweep::pipeline {

using instrumentation::Phase;
using instrumentation::PhaseCounters;
using instrumentation::Stopwatch;

namespace {

constexpr std::uint64_t kInitTag = 0x1a17;
constexpr std::uint64_t kTrainTag = 0x7a11;

}  // namespace

nn::LossTerms IterationRecord::mean_loss() const {
  nn::LossTerms m;
  if (epoch_loss.empty()) return m;
  for (const nn::LossTerms& e : epoch_loss) {
    m.policy += e.policy;
    m.value += e.value;
    m.total += e.total;
  }
  const auto n = static_cast<double>(epoch_loss.size());
  m.policy /= n;
  m.value /= n;
  m.total /= n;
  return m;
}

std::uint64_t fingerprint(const nn::Network& net) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double p : net.parameters()) {
    h ^= std::bit_cast<std::uint64_t>(p);
    h *= 0x100000001b3ULL;
  }
  return h;
}

nn::Network initial_network(const ParameterSet& ps, const CoachOptions& options) {
  nn::NetworkConfig config = options.network;
  config.dropout_rate = ps.dropout;
  return nn::Network(config, derive_seed({ps.seed, kInitTag}));
}

TrainingResult run_training(const ParameterSet& ps, const CoachOptions& options,
                            std::vector<RecordSink*> sinks) {
  ps.validate();
  if (options.network.board_size != ps.board_size) {
    throw ConfigError("game", fmt::format("network is for {0}x{0} but the game is {1}x{1}",
                                          options.network.board_size, ps.board_size));
  }
  const Stopwatch wall;
  nn::Network best = initial_network(ps, options);
  TrainingResult result{best, {}, {{0, best}}};
  for (RecordSink* s : sinks) s->on_start(ps, best);

  ReplayBuffer buffer(ps.retrain_length);
  const EpisodeOptions episode_options{options.augment};

  for (int it = 1; it <= ps.iteration; ++it) {
    try {
      const Stopwatch iteration_clock;
      IterationRecord rec;
      rec.iteration = it;
      rec.timing.iteration = it;
      rec.self_play_fingerprint = fingerprint(best);

      // Self-play with the current best model.
      Stopwatch clock;
      std::vector<Episode> episodes(static_cast<std::size_t>(ps.episode),
                                    Episode{{}, othello::GameState::initial(ps.board_size)});
      {
        const NetworkEvaluator evaluator(best);
        parallel_for(episodes.size(), options.threads, [&](std::size_t e) {
          Rng rng(derive_seed({ps.seed, static_cast<std::uint64_t>(it), e}));
          episodes[e] = execute_episode(evaluator, ps, rng, episode_options);
        });
      }
      PhaseCounters sp;
      std::vector<nn::TrainingExample> fresh;
      for (Episode& e : episodes) {
        ++sp.episodes;
        sp.plies += e.plies;
        sp.simulations += e.simulations;
        for (auto& ex : e.examples) fresh.push_back(std::move(ex));
      }
      rec.examples_new = static_cast<std::int64_t>(fresh.size());
      buffer.update(it, std::move(fresh));
      rec.retained_iterations = buffer.iterations();
      rec.timing.seconds[0] = clock.elapsed_s();
      rec.timing.counters[0] = sp;

      // Train a copy of best on the whole window.
      clock.restart();
      nn::Network candidate = best;
      const std::vector<nn::TrainingExample> pool = buffer.flatten();
      rec.examples_trained = static_cast<std::int64_t>(pool.size());
      const nn::TrainOptions train_options{ps.epoch, ps.batch_size, ps.learning_rate, ps.dropout,
                                           derive_seed({ps.seed, static_cast<std::uint64_t>(it),
                                                        kTrainTag})};
      const nn::TrainReport report = nn::train(candidate, pool, train_options);
      candidate.set_training_iteration(it);
      rec.epoch_loss = report.epoch_loss;
      rec.timing.seconds[1] = clock.elapsed_s();
      rec.timing.counters[1].batches = report.optimizer_steps;

      // Arena.
      clock.restart();
      const MatchResult match = arena(candidate, best, ps, options.threads);
      rec.wins = match.wins;
      rec.losses = match.losses;
      rec.draws = match.draws;
      rec.accepted = accept_model(match.wins, match.losses, match.draws, ps.update_threshold);
      if (rec.accepted) {
        best = candidate;
        result.accepted.push_back({it, best});
      }
      rec.best_fingerprint = fingerprint(best);
      rec.timing.seconds[2] = clock.elapsed_s();
      rec.timing.counters[2] = {match.games(), match.plies, match.simulations, 0};
      rec.timing.total_s = iteration_clock.elapsed_s();

      for (RecordSink* s : sinks) s->on_iteration(rec, candidate, best);
      if (options.verbose) {
        const nn::LossTerms m = rec.mean_loss();
        std::cout << fmt::format(
            "iter {:>3}  loss {:.4f} (pi {:.4f} v {:.4f})  arena {}-{}-{}  {}  "
            "examples {}  {:.1f}s\n",
            it, m.total, m.policy, m.value, rec.wins, rec.losses, rec.draws,
            rec.accepted ? "accept" : "reject", rec.examples_trained, rec.timing.total_s);
        std::cout.flush();
      }
      result.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      throw TrainingAborted(fmt::format("iteration {} failed: {}", it, e.what()),
                            std::move(result.records));
    }
  }
  result.best = best;
  result.wall_s = wall.elapsed_s();
  return result;
}

}  // namespace azsweep::pipeline
