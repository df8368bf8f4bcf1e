#include "azsweep/pipeline/parameters.hpp"

#include <cmath>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::pipeline {
namespace {

void require_count(std::string_view key, int value) {
  if (value < 1) {
    throw ConfigError(std::string(key), fmt::format("{} must be >= 1 (got {})", key, value));
  }
}

template <class Fn>
decltype(auto) visit_field(ParameterSet& ps, std::string_view key, Fn&& fn) {
  if (key == "iteration") return fn(ps.iteration);
  if (key == "episode") return fn(ps.episode);
  if (key == "tempThreshold") return fn(ps.temp_threshold);
  if (key == "mctssimu") return fn(ps.mcts_simulations);
  if (key == "Cpuct") return fn(ps.cpuct);
  if (key == "retrainlength") return fn(ps.retrain_length);
  if (key == "epoch") return fn(ps.epoch);
  if (key == "batchsize") return fn(ps.batch_size);
  if (key == "learningrate") return fn(ps.learning_rate);
  if (key == "dropout") return fn(ps.dropout);
  if (key == "arenacompare") return fn(ps.arena_compare);
  if (key == "updateThreshold") return fn(ps.update_threshold);
  throw ConfigError(std::string(key), fmt::format("unknown parameter '{}'", key));
}

}  // namespace

void ParameterSet::validate() const {
  require_count("iteration", iteration);
  require_count("episode", episode);
  require_count("tempThreshold", temp_threshold);
  require_count("mctssimu", mcts_simulations);
  require_count("retrainlength", retrain_length);
  require_count("epoch", epoch);
  require_count("batchsize", batch_size);
  require_count("arenacompare", arena_compare);
  if (!(cpuct > 0.0) || !std::isfinite(cpuct)) {
    throw ConfigError("Cpuct", fmt::format("Cpuct must be > 0 (got {})", cpuct));
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learningrate",
                      fmt::format("learningrate must be > 0 (got {})", learning_rate));
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout", fmt::format("dropout must lie in [0, 1) (got {})", dropout));
  }
  if (!(update_threshold > 0.0 && update_threshold < 1.0)) {
    throw ConfigError("updateThreshold",
                      fmt::format("updateThreshold must lie in (0, 1) (got {})", update_threshold));
  }
  if (board_size != 4 && board_size != 6) {
    throw ConfigError("game", fmt::format("board size {} unsupported (4 or 6)", board_size));
  }
}

std::optional<ParameterSpec> find_parameter(std::string_view key) {
  for (const ParameterSpec& p : kParameters) {
    if (p.key == key) return p;
  }
  return std::nullopt;
}

double get_parameter(const ParameterSet& ps, std::string_view key) {
  auto& mut = const_cast<ParameterSet&>(ps);
  return visit_field(mut, key, [](auto& field) { return static_cast<double>(field); });
}

void set_parameter(ParameterSet& ps, std::string_view key, double value) {
  visit_field(ps, key, [&](auto& field) {
    using T = std::remove_reference_t<decltype(field)>;
    if constexpr (std::is_integral_v<T>) {
      if (value != std::floor(value) || std::abs(value) > 1e9) {
        throw ConfigError(std::string(key),
                          fmt::format("{} must be an integer (got {})", key, value));
      }
      field = static_cast<T>(value);
    } else {
      field = value;
    }
  });
}

std::string format_parameter_value(std::string_view key, double value) {
  const auto spec = find_parameter(key);
  if (spec && spec->kind == ParameterKind::count) return fmt::format("{}", static_cast<long long>(value));
  return fmt::format("{}", value);
}

}  // namespace azsweep::pipeline
