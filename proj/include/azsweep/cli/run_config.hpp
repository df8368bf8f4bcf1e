#pragma once

// Flat `key = value` run configuration. Lines starting with '#' (and text
// after an unquoted '#') are comments. Keys:
//
//   game                 othello4 | othello6
//   seed                 unsigned integer; drawn from entropy when absent
//   iteration ... updateThreshold   the twelve loop parameters
//   hidden               comma-separated hidden layer widths, e.g. 128,128
//   activation           relu | tanh
//   output               run directory
//   threads              worker threads for self-play / arena (1 = sequential)
//   augment              true | false, add symmetric copies of examples
//   rating_anchor_games  games per checkpoint against the random anchor
//   rating_previous_games  games per checkpoint against the previous one
//   rating_k             a number for fixed K, or "staged"
//   budget.<parameter>   override for one of the twelve parameters

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "azsweep/nn/network.hpp"
#include "azsweep/pipeline/coach.hpp"
#include "azsweep/pipeline/parameters.hpp"
#include "azsweep/pipeline/rating_games.hpp"

namespace azsweep::cli {

struct RunConfig {
  pipeline::ParameterSet ps;  // board_size follows `game`
  bool seed_given = false;
  std::string game = "othello6";
  std::vector<int> hidden{128, 128};
  nn::Activation activation = nn::Activation::relu;
  std::string output = "runs/train";
  int threads = 1;
  bool augment = false;
  int rating_anchor_games = 20;
  int rating_previous_games = 20;
  std::string rating_k = "32";
  std::map<std::string, double> budget;

  // ps with the budget overrides applied, validated.
  pipeline::ParameterSet effective_parameters() const;
  pipeline::CoachOptions coach_options() const;
  pipeline::RatingOptions rating_options() const;
  nn::NetworkConfig network_config() const;
};

// Keys accepted in config files and as --key flags (budget.* excluded).
const std::vector<std::string>& config_keys();

// Applies one key; throws ConfigError naming the key for unknown keys or bad values.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

// One parsed `key = value` line with its line number.
struct ConfigLine {
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<ConfigLine> parse_key_values(std::istream& in);

RunConfig parse_run_config(std::istream& in);

// Draws a seed from std::random_device when none was given.
void ensure_seed(RunConfig& config);

// Snapshot that parses back to the same configuration.
std::string format_run_config(const RunConfig& config);

int board_size_for_game(std::string_view game);

}  // namespace azsweep::cli
