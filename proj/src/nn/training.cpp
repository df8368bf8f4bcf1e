#include "azsweep/nn/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::nn {

LossTerms loss(std::span<const double> target_policy, double outcome,
               std::span<const double> predicted_policy, double predicted_value) {
  if (target_policy.size() != predicted_policy.size()) {
    throw ContractViolation(fmt::format("policy lengths differ: {} vs {}", target_policy.size(),
                                        predicted_policy.size()));
  }
  LossTerms out;
  for (std::size_t a = 0; a < target_policy.size(); ++a) {
    if (target_policy[a] != 0.0) {
      out.policy -= target_policy[a] * std::log(predicted_policy[a] + kLogFloor);
    }
  }
  const double diff = predicted_value - outcome;
  out.value = diff * diff;
  out.total = out.policy + out.value;
  return out;
}

// Per-example forward/backward pass with optional inverted dropout on the
// hidden activations. Gradients are accumulated scaled by `weight`.
class Backprop {
 public:
  explicit Backprop(const Network& net) : net_(net) {
    const std::size_t layers = net.hidden_.size();
    pre_.resize(layers);
    post_.resize(layers);
    keep_.resize(layers);
  }

  LossTerms run(const TrainingExample& ex, double dropout, Rng* rng, double weight,
                std::vector<double>& grad) {
    const auto& params = net_.params_;
    const Activation act = net_.config_.activation;
    if (ex.state.size() != net_.config_.input_size() ||
        ex.policy.size() != static_cast<std::size_t>(net_.config_.action_count)) {
      throw ContractViolation("training example shape does not match the network");
    }
    input_.assign(ex.state.begin(), ex.state.end());
    const double keep_scale = dropout > 0.0 ? 1.0 / (1.0 - dropout) : 1.0;

    const std::vector<double>* prev = &input_;
    for (std::size_t l = 0; l < net_.hidden_.size(); ++l) {
      const auto& layer = net_.hidden_[l];
      auto& z = pre_[l];
      auto& a = post_[l];
      auto& keep = keep_[l];
      z.assign(static_cast<std::size_t>(layer.out), 0.0);
      a.assign(static_cast<std::size_t>(layer.out), 0.0);
      keep.assign(static_cast<std::size_t>(layer.out), 1.0);
      for (int o = 0; o < layer.out; ++o) {
        const double* w = &params[layer.weight + static_cast<std::size_t>(o) * layer.in];
        double s = params[layer.bias + static_cast<std::size_t>(o)];
        for (int i = 0; i < layer.in; ++i) s += w[i] * (*prev)[static_cast<std::size_t>(i)];
        z[static_cast<std::size_t>(o)] = s;
        double h = act == Activation::relu ? std::max(s, 0.0) : std::tanh(s);
        if (dropout > 0.0 && rng != nullptr) {
          const double k = uniform01(*rng) < dropout ? 0.0 : keep_scale;
          keep[static_cast<std::size_t>(o)] = k;
          h *= k;
        }
        a[static_cast<std::size_t>(o)] = h;
      }
      prev = &a;
    }
    const std::vector<double>& last = *prev;

    const auto& ph = net_.policy_head_;
    const auto& vh = net_.value_head_;
    logits_.assign(static_cast<std::size_t>(ph.out), 0.0);
    for (int o = 0; o < ph.out; ++o) {
      const double* w = &params[ph.weight + static_cast<std::size_t>(o) * ph.in];
      double s = params[ph.bias + static_cast<std::size_t>(o)];
      for (int i = 0; i < ph.in; ++i) s += w[i] * last[static_cast<std::size_t>(i)];
      logits_[static_cast<std::size_t>(o)] = s;
    }
    double vpre = params[vh.bias];
    for (int i = 0; i < vh.in; ++i) {
      vpre += params[vh.weight + static_cast<std::size_t>(i)] * last[static_cast<std::size_t>(i)];
    }
    const double v = std::tanh(vpre);

    const double max_logit = *std::max_element(logits_.begin(), logits_.end());
    probs_.resize(logits_.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < logits_.size(); ++j) {
      probs_[j] = std::exp(logits_[j] - max_logit);
      sum += probs_[j];
    }
    for (double& p : probs_) p /= sum;

    const LossTerms terms = loss(ex.policy, ex.outcome, probs_, v);
    if (!std::isfinite(terms.total)) {
      throw NumericError(fmt::format("non-finite loss (pi {}, v {})", terms.policy, terms.value));
    }

    // d loss_pi / d p_a = -pi_a / (p_a + eps); chain through the softmax.
    dlogits_.assign(logits_.size(), 0.0);
    double gp = 0.0;
    for (std::size_t a = 0; a < probs_.size(); ++a) {
      const double g = -ex.policy[a] / (probs_[a] + kLogFloor);
      dlogits_[a] = g;
      gp += g * probs_[a];
    }
    for (std::size_t j = 0; j < probs_.size(); ++j) {
      dlogits_[j] = weight * probs_[j] * (dlogits_[j] - gp);
    }
    const double dvpre = weight * 2.0 * (v - ex.outcome) * (1.0 - v * v);

    dact_.assign(last.size(), 0.0);
    for (int o = 0; o < ph.out; ++o) {
      const double g = dlogits_[static_cast<std::size_t>(o)];
      if (g == 0.0) continue;
      const std::size_t row = ph.weight + static_cast<std::size_t>(o) * ph.in;
      for (int i = 0; i < ph.in; ++i) {
        grad[row + static_cast<std::size_t>(i)] += g * last[static_cast<std::size_t>(i)];
        dact_[static_cast<std::size_t>(i)] += g * params[row + static_cast<std::size_t>(i)];
      }
      grad[ph.bias + static_cast<std::size_t>(o)] += g;
    }
    for (int i = 0; i < vh.in; ++i) {
      grad[vh.weight + static_cast<std::size_t>(i)] += dvpre * last[static_cast<std::size_t>(i)];
      dact_[static_cast<std::size_t>(i)] += dvpre * params[vh.weight + static_cast<std::size_t>(i)];
    }
    grad[vh.bias] += dvpre;

    for (std::size_t l = net_.hidden_.size(); l-- > 0;) {
      const auto& layer = net_.hidden_[l];
      const std::vector<double>& below = l == 0 ? input_ : post_[l - 1];
      dz_.assign(static_cast<std::size_t>(layer.out), 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const auto oi = static_cast<std::size_t>(o);
        const double z = pre_[l][oi];
        const double deriv = act == Activation::relu ? (z > 0.0 ? 1.0 : 0.0)
                                                     : 1.0 - std::tanh(z) * std::tanh(z);
        dz_[oi] = dact_[oi] * keep_[l][oi] * deriv;
      }
      dbelow_.assign(below.size(), 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double g = dz_[static_cast<std::size_t>(o)];
        if (g == 0.0) continue;
        const std::size_t row = layer.weight + static_cast<std::size_t>(o) * layer.in;
        for (int i = 0; i < layer.in; ++i) {
          grad[row + static_cast<std::size_t>(i)] += g * below[static_cast<std::size_t>(i)];
          if (l > 0) dbelow_[static_cast<std::size_t>(i)] += g * params[row + static_cast<std::size_t>(i)];
        }
        grad[layer.bias + static_cast<std::size_t>(o)] += g;
      }
      dact_.swap(dbelow_);
    }
    return terms;
  }

 private:
  const Network& net_;
  std::vector<double> input_;
  std::vector<std::vector<double>> pre_;
  std::vector<std::vector<double>> post_;
  std::vector<std::vector<double>> keep_;
  std::vector<double> logits_;
  std::vector<double> probs_;
  std::vector<double> dlogits_;
  std::vector<double> dact_;
  std::vector<double> dz_;
  std::vector<double> dbelow_;
};

namespace {

void add_scaled(LossTerms& acc, const LossTerms& t, double w) {
  acc.policy += w * t.policy;
  acc.value += w * t.value;
}

}  // namespace

GradientResult batch_gradient(const Network& net, std::span<const TrainingExample> batch) {
  if (batch.empty()) throw ContractViolation("empty batch");
  GradientResult out;
  out.gradient.assign(net.parameter_count(), 0.0);
  Backprop bp(net);
  const double w = 1.0 / static_cast<double>(batch.size());
  for (const TrainingExample& ex : batch) {
    add_scaled(out.mean_loss, bp.run(ex, 0.0, nullptr, w, out.gradient), w);
  }
  out.mean_loss.total = out.mean_loss.policy + out.mean_loss.value;
  return out;
}

LossTerms batch_loss(const Network& net, std::span<const TrainingExample> batch) {
  if (batch.empty()) throw ContractViolation("empty batch");
  LossTerms acc;
  const double w = 1.0 / static_cast<double>(batch.size());
  for (const TrainingExample& ex : batch) {
    const Prediction p = net.predict(ex.state);
    add_scaled(acc, loss(ex.policy, ex.outcome, p.policy, p.value), w);
  }
  acc.total = acc.policy + acc.value;
  return acc;
}

AdamOptimizer::AdamOptimizer(std::size_t size, double learning_rate, double beta1, double beta2,
                             double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw ContractViolation("optimizer size mismatch");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
  }
}

void apply_update(Network& net, std::span<const double> updated) {
  net.params_.assign(updated.begin(), updated.end());
}

TrainReport train(Network& net, std::span<const TrainingExample> examples,
                  const TrainOptions& options) {
  if (examples.empty()) throw ContractViolation("train: no examples");
  if (options.epochs < 1) throw ContractViolation("train: epochs must be >= 1");
  if (options.batch_size < 1) throw ContractViolation("train: batch_size must be >= 1");
  if (!(options.dropout >= 0.0 && options.dropout < 1.0)) {
    throw ContractViolation("train: dropout must lie in [0, 1)");
  }

  Rng rng(options.seed);
  AdamOptimizer adam(net.parameter_count(), options.learning_rate);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto n = static_cast<std::int64_t>(examples.size());
  const std::int64_t batches = (n + options.batch_size - 1) / options.batch_size;

  TrainReport report;
  report.batches_per_epoch = batches;
  std::vector<double> params(net.parameters().begin(), net.parameters().end());
  std::vector<double> grad(params.size());

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    portable_shuffle(order.begin(), order.end(), rng);
    LossTerms epoch_loss;
    for (std::int64_t b = 0; b < batches; ++b) {
      const std::int64_t begin = b * options.batch_size;
      const std::int64_t end = std::min(n, begin + options.batch_size);
      const double w = 1.0 / static_cast<double>(end - begin);
      std::fill(grad.begin(), grad.end(), 0.0);
      Backprop bp(net);
      for (std::int64_t i = begin; i < end; ++i) {
        const TrainingExample& ex = examples[order[static_cast<std::size_t>(i)]];
        const LossTerms t = bp.run(ex, options.dropout, &rng, w, grad);
        add_scaled(epoch_loss, t, 1.0 / static_cast<double>(n));
      }
      adam.step(params, grad);
      round_to_float(params);
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (!std::isfinite(params[i])) {
          throw NumericError(fmt::format("parameter {} became non-finite in epoch {}", i, epoch));
        }
      }
      apply_update(net, params);
      ++report.optimizer_steps;
    }
    epoch_loss.total = epoch_loss.policy + epoch_loss.value;
    report.epoch_loss.push_back(epoch_loss);
  }
  return report;
}

}  // namespace azsweep::nn
