#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace azsweep::pipeline {

// The twelve tunable settings of the self-play / train / arena loop, with
// defaults taken from the baseline column of the sweep grid.
struct ParameterSet {
  int iteration = 100;
  int episode = 50;
  int temp_threshold = 15;
  int mcts_simulations = 100;
  double cpuct = 1.0;
  int retrain_length = 20;
  int epoch = 10;
  int batch_size = 64;
  double learning_rate = 0.005;
  double dropout = 0.3;
  int arena_compare = 40;
  double update_threshold = 0.6;

  std::uint64_t seed = 0;
  int board_size = 6;

  // Throws ConfigError naming the first offending key.
  void validate() const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

enum class ParameterKind { count, real };

struct ParameterSpec {
  std::string_view key;  // config / CLI / manifest name
  ParameterKind kind;
};

// In the order the parameters appear in the training loop.
inline constexpr std::array<ParameterSpec, 12> kParameters{{
    {"iteration", ParameterKind::count},
    {"episode", ParameterKind::count},
    {"tempThreshold", ParameterKind::count},
    {"mctssimu", ParameterKind::count},
    {"Cpuct", ParameterKind::real},
    {"retrainlength", ParameterKind::count},
    {"epoch", ParameterKind::count},
    {"batchsize", ParameterKind::count},
    {"learningrate", ParameterKind::real},
    {"dropout", ParameterKind::real},
    {"arenacompare", ParameterKind::count},
    {"updateThreshold", ParameterKind::real},
}};

std::optional<ParameterSpec> find_parameter(std::string_view key);

double get_parameter(const ParameterSet& ps, std::string_view key);

// Count parameters must receive an integral value; no range validation here.
void set_parameter(ParameterSet& ps, std::string_view key, double value);

std::string format_parameter_value(std::string_view key, double value);

}  // namespace azsweep::pipeline
