#include "azsweep/nn/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::nn {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
  }
  return "relu";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh;
  throw ConfigError("activation", fmt::format("unknown activation '{}'", name));
}

NetworkConfig NetworkConfig::for_board(int board_size) {
  NetworkConfig c;
  c.board_size = board_size;
  c.action_count = board_size * board_size + 1;
  return c;
}

void NetworkConfig::validate() const {
  if (board_size < 2) throw ConfigError("board_size", "board_size must be >= 2");
  if (input_channels < 1) throw ConfigError("input_channels", "input_channels must be >= 1");
  if (action_count != board_size * board_size + 1) {
    throw ConfigError("action_count",
                      fmt::format("action_count {} does not match board size {} (expected {})",
                                  action_count, board_size, board_size * board_size + 1));
  }
  for (int w : hidden_layers) {
    if (w < 1) throw ConfigError("hidden_layers", "hidden layer widths must be >= 1");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout", "dropout must lie in [0, 1)");
  }
}

void round_to_float(std::span<double> values) {
  for (double& v : values) v = static_cast<double>(static_cast<float>(v));
}

Network::Network(NetworkConfig config, std::uint64_t init_seed)
    : config_(std::move(config)), init_seed_(init_seed) {
  config_.validate();
  std::size_t offset = 0;
  auto add_layer = [&](const std::string& name, int in, int out) {
    Layer layer{in, out, offset, offset + static_cast<std::size_t>(in) * out};
    tensors_.push_back({name + ".weight", {out, in}, layer.weight, static_cast<std::size_t>(in) * out});
    tensors_.push_back({name + ".bias", {out}, layer.bias, static_cast<std::size_t>(out)});
    offset = layer.bias + static_cast<std::size_t>(out);
    return layer;
  };

  int width = static_cast<int>(config_.input_size());
  for (std::size_t i = 0; i < config_.hidden_layers.size(); ++i) {
    hidden_.push_back(add_layer(fmt::format("hidden{}", i), width, config_.hidden_layers[i]));
    width = config_.hidden_layers[i];
  }
  policy_head_ = add_layer("policy", width, config_.action_count);
  value_head_ = add_layer("value", width, 1);
  params_.assign(offset, 0.0);

  Rng rng(init_seed);
  for (const Layer& layer : hidden_) {
    const double fan_in = layer.in;
    const double fan_out = layer.out;
    const double limit = config_.activation == Activation::relu
                             ? std::sqrt(6.0 / fan_in)
                             : std::sqrt(6.0 / (fan_in + fan_out));
    const std::size_t n = static_cast<std::size_t>(layer.in) * layer.out;
    for (std::size_t i = 0; i < n; ++i) {
      params_[layer.weight + i] = (2.0 * uniform01(rng) - 1.0) * limit;
    }
  }
  round_to_float(params_);
}

void Network::set_parameters(std::span<const double> values) {
  if (values.size() != params_.size()) {
    throw ContractViolation(
        fmt::format("parameter count {} != {}", values.size(), params_.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NumericError(fmt::format("non-finite parameter at flat index {}", i));
    }
  }
  std::copy(values.begin(), values.end(), params_.begin());
}

void Network::check_input(std::span<const float> encoding) const {
  if (encoding.size() != config_.input_size()) {
    throw ContractViolation(fmt::format("encoding has {} entries, network expects {}",
                                        encoding.size(), config_.input_size()));
  }
}

double Network::forward_logits(std::span<const float> encoding, std::vector<double>& logits) const {
  std::vector<double> act(encoding.begin(), encoding.end());
  std::vector<double> next;
  for (const Layer& layer : hidden_) {
    next.assign(static_cast<std::size_t>(layer.out), 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double* w = &params_[layer.weight + static_cast<std::size_t>(o) * layer.in];
      double z = params_[layer.bias + static_cast<std::size_t>(o)];
      for (int i = 0; i < layer.in; ++i) z += w[i] * act[static_cast<std::size_t>(i)];
      next[static_cast<std::size_t>(o)] =
          config_.activation == Activation::relu ? std::max(z, 0.0) : std::tanh(z);
    }
    act.swap(next);
  }
  const Layer& ph = policy_head_;
  logits.assign(static_cast<std::size_t>(ph.out), 0.0);
  for (int o = 0; o < ph.out; ++o) {
    const double* w = &params_[ph.weight + static_cast<std::size_t>(o) * ph.in];
    double z = params_[ph.bias + static_cast<std::size_t>(o)];
    for (int i = 0; i < ph.in; ++i) z += w[i] * act[static_cast<std::size_t>(i)];
    logits[static_cast<std::size_t>(o)] = z;
  }
  double v = params_[value_head_.bias];
  for (int i = 0; i < value_head_.in; ++i) {
    v += params_[value_head_.weight + static_cast<std::size_t>(i)] * act[static_cast<std::size_t>(i)];
  }
  return v;
}

namespace {

void softmax_over(const std::vector<double>& logits, std::span<const int> support,
                  std::vector<double>& out) {
  out.assign(logits.size(), 0.0);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int a : support) max_logit = std::max(max_logit, logits[static_cast<std::size_t>(a)]);
  double sum = 0.0;
  for (int a : support) {
    const double e = std::exp(logits[static_cast<std::size_t>(a)] - max_logit);
    out[static_cast<std::size_t>(a)] = e;
    sum += e;
  }
  for (int a : support) out[static_cast<std::size_t>(a)] /= sum;
}

}  // namespace

Prediction Network::predict(std::span<const float> encoding) const {
  std::vector<int> all(static_cast<std::size_t>(config_.action_count));
  for (int a = 0; a < config_.action_count; ++a) all[static_cast<std::size_t>(a)] = a;
  return predict(encoding, all);
}

Prediction Network::predict(std::span<const float> encoding, std::span<const int> legal) const {
  check_input(encoding);
  if (legal.empty()) throw ContractViolation("predict needs at least one legal action");
  for (int a : legal) {
    if (a < 0 || a >= config_.action_count) {
      throw ContractViolation(fmt::format("legal action {} out of range", a));
    }
  }
  std::vector<double> logits;
  const double pre_value = forward_logits(encoding, logits);
  Prediction out;
  out.value = std::tanh(pre_value);
  softmax_over(logits, legal, out.policy);
  if (!std::isfinite(out.value) ||
      !std::all_of(out.policy.begin(), out.policy.end(), [](double p) { return std::isfinite(p); })) {
    throw NumericError("network produced non-finite output (non-finite parameters?)");
  }
  return out;
}

}  // namespace azsweep::nn
