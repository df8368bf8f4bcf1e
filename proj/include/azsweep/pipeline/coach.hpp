#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "azsweep/instrumentation/phase_timing.hpp"
#include "azsweep/nn/network.hpp"
#include "azsweep/nn/training.hpp"
#include "azsweep/pipeline/parameters.hpp"

namespace azsweep::pipeline {

struct IterationRecord {
  int iteration = 0;  // 1-based
  std::vector<nn::LossTerms> epoch_loss;
  int wins = 0;
  int losses = 0;
  int draws = 0;
  bool accepted = false;
  instrumentation::PhaseBreakdown timing;
  double elo = std::numeric_limits<double>::quiet_NaN();  // of the best model after this iteration

  std::int64_t examples_new = 0;
  std::int64_t examples_trained = 0;
  std::vector<int> retained_iterations;  // buffer contents after the update, oldest first
  std::uint64_t self_play_fingerprint = 0;
  std::uint64_t best_fingerprint = 0;  // after the accept/reject decision

  // Mean over epochs.
  nn::LossTerms mean_loss() const;
};

// Hash of the exact parameter bits.
std::uint64_t fingerprint(const nn::Network& net);

struct AcceptedCheckpoint {
  int iteration = 0;  // 0 = the initial model
  nn::Network model;
};

struct TrainingResult {
  nn::Network best;
  std::vector<IterationRecord> records;
  std::vector<AcceptedCheckpoint> accepted;  // starts with iteration 0
  double wall_s = 0.0;
};

// Receives records from the coordinating thread in iteration order.
class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void on_start(const ParameterSet& /*ps*/, const nn::Network& /*initial*/) {}
  virtual void on_iteration(const IterationRecord& /*record*/, const nn::Network& /*candidate*/,
                            const nn::Network& /*best*/) {}
};

struct CoachOptions {
  nn::NetworkConfig network = nn::NetworkConfig::for_board(6);
  bool augment = false;
  int threads = 1;
  bool verbose = false;
};

// Thrown when any stage fails; carries every record completed so far.
class TrainingAborted : public std::runtime_error {
 public:
  TrainingAborted(const std::string& what, std::vector<IterationRecord> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<IterationRecord>& partial() const { return partial_; }

 private:
  std::vector<IterationRecord> partial_;
};

// ps.iteration rounds of self-play -> window update -> training on the
// flattened window -> arena -> accept/reject. Candidates start from the
// current best. All randomness derives from ps.seed.
TrainingResult run_training(const ParameterSet& ps, const CoachOptions& options,
                            std::vector<RecordSink*> sinks = {});

// The network the coach starts from.
nn::Network initial_network(const ParameterSet& ps, const CoachOptions& options);

}  // namespace azsweep::pipeline
