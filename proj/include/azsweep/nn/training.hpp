#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "azsweep/nn/network.hpp"

namespace azsweep::nn {

inline constexpr double kLogFloor = 1e-10;

struct LossTerms {
  double policy = 0.0;  // -sum_a pi(a) log(p(a) + 1e-10)
  double value = 0.0;   // (v - z)^2
  double total = 0.0;   // policy + value
};

LossTerms loss(std::span<const double> target_policy, double outcome,
               std::span<const double> predicted_policy, double predicted_value);

struct GradientResult {
  std::vector<double> gradient;  // d(mean total loss)/d(parameters), flat
  LossTerms mean_loss;
};

// Analytic gradient of the batch-mean loss, dropout disabled.
GradientResult batch_gradient(const Network& net, std::span<const TrainingExample> batch);

// Mean loss over a batch with dropout disabled (the quantity batch_gradient differentiates).
LossTerms batch_loss(const Network& net, std::span<const TrainingExample> batch);

class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8);

  void step(std::span<double> params, std::span<const double> grad);
  std::int64_t steps() const { return t_; }

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  std::int64_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

struct TrainOptions {
  int epochs = 10;
  int batch_size = 64;
  double learning_rate = 0.005;
  double dropout = 0.3;
  std::uint64_t seed = 0;
};

struct TrainReport {
  std::vector<LossTerms> epoch_loss;  // mean over examples, as seen during training
  std::int64_t batches_per_epoch = 0;
  std::int64_t optimizer_steps = 0;
};

// Shuffles once per epoch, splits into ceil(n / batch_size) batches (the last
// may be short) and takes one Adam step per batch on the mean total loss.
// A fresh optimizer is created per call.
TrainReport train(Network& net, std::span<const TrainingExample> examples,
                  const TrainOptions& options);

}  // namespace azsweep::nn
