#include "azsweep/cli/run_config.hpp"

#include <charconv>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const std::string t = trim(text);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty()) {
    throw ConfigError(std::string(key), fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(std::string(key), fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::vector<int> parse_widths(std::string_view key, std::string_view text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const int w = parse_number<int>(key, item);
    if (w < 1) throw ConfigError(std::string(key), fmt::format("{}: widths must be >= 1", key));
    out.push_back(w);
  }
  if (out.empty()) throw ConfigError(std::string(key), fmt::format("{}: no widths given", key));
  return out;
}

int positive(std::string_view key, std::string_view text) {
  const int v = parse_number<int>(key, text);
  if (v < 1) throw ConfigError(std::string(key), fmt::format("{} must be >= 1", key));
  return v;
}

}  // namespace

int board_size_for_game(std::string_view game) {
  if (game == "othello4") return 4;
  if (game == "othello6") return 6;
  throw ConfigError("game", fmt::format("game must be othello4 or othello6 (got '{}')", game));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k{"game", "seed"};
    for (const auto& p : pipeline::kParameters) k.emplace_back(p.key);
    for (const char* extra : {"hidden", "activation", "output", "threads", "augment",
                              "rating_anchor_games", "rating_previous_games", "rating_k"}) {
      k.emplace_back(extra);
    }
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string value = trim(raw);
  if (key == "game") {
    c.ps.board_size = board_size_for_game(value);
    c.game = value;
  } else if (key == "seed") {
    c.ps.seed = parse_number<std::uint64_t>(key, value);
    c.seed_given = true;
  } else if (auto spec = pipeline::find_parameter(key)) {
    pipeline::set_parameter(c.ps, key, parse_number<double>(key, value));
  } else if (key == "hidden") {
    c.hidden = parse_widths(key, value);
  } else if (key == "activation") {
    try {
      c.activation = nn::parse_activation(value);
    } catch (const ConfigError& e) {
      throw ConfigError("activation", e.what());
    }
  } else if (key == "output") {
    if (value.empty()) throw ConfigError("output", "output must not be empty");
    c.output = value;
  } else if (key == "threads") {
    c.threads = positive(key, value);
  } else if (key == "augment") {
    c.augment = parse_bool(key, value);
  } else if (key == "rating_anchor_games") {
    c.rating_anchor_games = parse_number<int>(key, value);
    if (c.rating_anchor_games < 0) throw ConfigError("rating_anchor_games", "must be >= 0");
  } else if (key == "rating_previous_games") {
    c.rating_previous_games = parse_number<int>(key, value);
    if (c.rating_previous_games < 0) throw ConfigError("rating_previous_games", "must be >= 0");
  } else if (key == "rating_k") {
    if (value != "staged" && !(parse_number<double>(key, value) > 0.0)) {
      throw ConfigError("rating_k", "rating_k must be positive or 'staged'");
    }
    c.rating_k = value;
  } else if (key.starts_with("budget.")) {
    const std::string_view param = key.substr(7);
    if (!pipeline::find_parameter(param)) {
      throw ConfigError(std::string(key), fmt::format("unknown budget parameter '{}'", param));
    }
    c.budget[std::string(param)] = parse_number<double>(key, value);
  } else {
    throw ConfigError(std::string(key), fmt::format("unknown key '{}'", key));
  }
}

std::vector<ConfigLine> parse_key_values(std::istream& in) {
  std::vector<ConfigLine> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", fmt::format("line {}: expected 'key = value'", number));
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("", fmt::format("line {}: missing key", number));
    out.push_back({key, trim(std::string_view(t).substr(eq + 1)), number});
  }
  return out;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  for (const ConfigLine& l : parse_key_values(in)) set_config_value(c, l.key, l.value);
  return c;
}

void ensure_seed(RunConfig& c) {
  if (c.seed_given) return;
  std::random_device rd;
  c.ps.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  c.seed_given = true;
}

pipeline::ParameterSet RunConfig::effective_parameters() const {
  pipeline::ParameterSet out = ps;
  for (const auto& [key, value] : budget) pipeline::set_parameter(out, key, value);
  out.validate();
  return out;
}

nn::NetworkConfig RunConfig::network_config() const {
  nn::NetworkConfig n = nn::NetworkConfig::for_board(ps.board_size);
  n.hidden_layers = hidden;
  n.activation = activation;
  n.dropout_rate = ps.dropout;
  return n;
}

pipeline::CoachOptions RunConfig::coach_options() const {
  pipeline::CoachOptions o;
  o.network = network_config();
  o.augment = augment;
  o.threads = threads;
  return o;
}

pipeline::RatingOptions RunConfig::rating_options() const {
  pipeline::RatingOptions o;
  o.games_vs_anchor = rating_anchor_games;
  o.games_vs_previous = rating_previous_games;
  o.k_policy = rating_k == "staged" ? rating::KPolicy::staged()
                                    : rating::KPolicy::fixed(std::stod(rating_k));
  o.threads = threads;
  return o;
}

std::string format_run_config(const RunConfig& c) {
  std::string out;
  out += fmt::format("game = {}\n", c.game);
  if (c.seed_given) out += fmt::format("seed = {}\n", c.ps.seed);
  for (const auto& p : pipeline::kParameters) {
    out += fmt::format("{} = {}\n", p.key,
                       pipeline::format_parameter_value(p.key, pipeline::get_parameter(c.ps, p.key)));
  }
  out += fmt::format("hidden = {}\n", fmt::join(c.hidden, ","));
  out += fmt::format("activation = {}\n", nn::to_string(c.activation));
  out += fmt::format("output = {}\n", c.output);
  out += fmt::format("threads = {}\n", c.threads);
  out += fmt::format("augment = {}\n", c.augment);
  out += fmt::format("rating_anchor_games = {}\n", c.rating_anchor_games);
  out += fmt::format("rating_previous_games = {}\n", c.rating_previous_games);
  out += fmt::format("rating_k = {}\n", c.rating_k);
  for (const auto& [key, value] : c.budget) {
    out += fmt::format("budget.{} = {}\n", key, pipeline::format_parameter_value(key, value));
  }
  return out;
}

}  // namespace azsweep::cli
