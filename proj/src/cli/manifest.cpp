#include "azsweep/cli/manifest.hpp"

#include <sstream>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError(key, fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return v;
}

}  // namespace

SweepManifest parse_manifest(std::istream& in) {
  SweepManifest m;
  sweep::SweepGrid full = sweep::SweepGrid::standard();
  m.budget = sweep::BudgetOverrides::desk();
  std::vector<std::string> parameters;
  for (const auto& p : pipeline::kParameters) parameters.emplace_back(p.key);

  for (const ConfigLine& l : parse_key_values(in)) {
    if (l.key == "parameters") {
      parameters = split_list(l.value);
      for (const std::string& p : parameters) {
        if (!pipeline::find_parameter(p)) {
          throw ConfigError("parameters", fmt::format("unknown parameter '{}' in parameters", p));
        }
      }
    } else if (l.key.starts_with("grid.")) {
      const std::string param = l.key.substr(5);
      if (!pipeline::find_parameter(param)) {
        throw ConfigError(l.key, fmt::format("unknown grid parameter '{}'", param));
      }
      const auto values = split_list(l.value);
      if (values.size() != 3) {
        throw ConfigError(l.key, fmt::format("{}: expected 'min, default, max'", l.key));
      }
      full.set({param, number(l.key, values[0]), number(l.key, values[1]), number(l.key, values[2])});
    } else if (l.key == "budget") {
      if (l.value == "desk") {
        m.budget = sweep::BudgetOverrides::desk();
      } else if (l.value == "none") {
        m.budget.values.clear();
      } else {
        throw ConfigError("budget", "budget must be desk or none");
      }
    } else if (l.key.starts_with("budget.")) {
      const std::string param = l.key.substr(7);
      if (!pipeline::find_parameter(param)) {
        throw ConfigError(l.key, fmt::format("unknown budget parameter '{}'", param));
      }
      m.budget.values[param] = number(l.key, l.value);
    } else if (l.key == "parallel") {
      if (l.value != "true" && l.value != "false") {
        throw ConfigError("parallel", "parallel must be true or false");
      }
      m.parallel = l.value == "true";
    } else {
      set_config_value(m.base, l.key, l.value);
    }
  }
  m.grid = full.restricted(parameters);
  return m;
}

}  // namespace azsweep::cli
