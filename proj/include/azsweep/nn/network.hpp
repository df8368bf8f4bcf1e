#pragma once

// Dense policy/value network trained from scratch.
//
//   input (2 x N x N) -> [dense -> activation -> dropout] x hidden_layers
//                     -> policy head: dense -> softmax over N*N + 1 actions
//                     -> value head:  dense -> tanh
//
// Parameters live in one flat buffer of doubles holding float32-representable
// values; optimizer steps round back to float32 so checkpoints (which store
// float32) reload to bit-identical forward outputs.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "azsweep/util/random.hpp"

namespace azsweep::nn {

enum class Activation { relu, tanh };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

struct NetworkConfig {
  int board_size = 6;
  int input_channels = 2;
  std::vector<int> hidden_layers{128, 128};
  Activation activation = Activation::relu;
  double dropout_rate = 0.3;
  int action_count = 37;

  static NetworkConfig for_board(int board_size);

  std::size_t input_size() const {
    return static_cast<std::size_t>(input_channels * board_size * board_size);
  }
  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct TensorInfo {
  std::string name;
  std::vector<int> shape;
  std::size_t offset = 0;
  std::size_t size = 0;
};

struct Prediction {
  std::vector<double> policy;
  double value = 0.0;
};

// One (state, pi, z) training triple. The policy target already has zero mass
// on moves that were illegal in the encoded state.
struct TrainingExample {
  std::vector<float> state;
  std::vector<double> policy;
  double outcome = 0.0;
};

class Network {
 public:
  // Hidden layers get scaled uniform weights from `init_seed`; both output
  // heads start at zero, so a fresh model predicts a uniform policy and v = 0.
  Network(NetworkConfig config, std::uint64_t init_seed);

  const NetworkConfig& config() const { return config_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }

  std::size_t parameter_count() const { return params_.size(); }
  std::span<const double> parameters() const { return params_; }

  // Copies `values` verbatim (no float32 rounding). Rejects wrong sizes and
  // non-finite entries.
  void set_parameters(std::span<const double> values);

  // Softmax over every action (training view).
  Prediction predict(std::span<const float> encoding) const;
  // Softmax restricted to `legal` actions; all other entries are exactly zero.
  Prediction predict(std::span<const float> encoding, std::span<const int> legal) const;

  std::uint64_t init_seed() const { return init_seed_; }
  std::int64_t training_iteration() const { return training_iteration_; }
  void set_training_iteration(std::int64_t it) { training_iteration_ = it; }

  // Same architecture and bit-identical parameters.
  friend bool operator==(const Network& a, const Network& b) {
    return a.config_ == b.config_ && a.params_ == b.params_;
  }

 private:
  friend class Backprop;
  friend void apply_update(Network&, std::span<const double>);

  struct Layer {
    int in = 0;
    int out = 0;
    std::size_t weight = 0;  // offset of the out x in row-major matrix
    std::size_t bias = 0;
  };

  void check_input(std::span<const float> encoding) const;
  // Forward pass without dropout; fills logits and returns the value pre-activation.
  double forward_logits(std::span<const float> encoding, std::vector<double>& logits) const;

  NetworkConfig config_;
  std::vector<Layer> hidden_;
  Layer policy_head_;
  Layer value_head_;
  std::vector<TensorInfo> tensors_;
  std::vector<double> params_;
  std::uint64_t init_seed_ = 0;
  std::int64_t training_iteration_ = 0;
};

// Replaces every parameter with the nearest float32 value.
void round_to_float(std::span<double> values);

}  // namespace azsweep::nn
