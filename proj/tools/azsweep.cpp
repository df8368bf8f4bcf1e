#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "azsweep/cli/commands.hpp"
#include "azsweep/cli/run_config.hpp"
#include "azsweep/util/errors.hpp"

namespace cli = azsweep::cli;

int main(int argc, char** argv) {
  CLI::App app{"Self-play training, hyper-parameter sweeps and reports for small Othello boards"};
  app.require_subcommand(1);
  const cli::Streams io{std::cin, std::cout, std::cerr};

  // train
  auto* train = app.add_subcommand("train", "train one model and write a run directory");
  std::string config_path;
  train->add_option("--config", config_path, "key = value config file");
  std::map<std::string, std::string> flag_values;
  for (const std::string& key : cli::config_keys()) {
    train->add_option_function<std::string>(
        "--" + key, [&flag_values, key](const std::string& v) { flag_values[key] = v; },
        "overrides '" + key + "'");
  }
  train->add_option_function<std::string>(
      "--out", [&flag_values](const std::string& v) { flag_values["output"] = v; },
      "run directory (same as --output)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a one-at-a-time parameter sweep");
  cli::SweepCommand sweep_cmd;
  std::string sweep_out;
  sweep->add_option("manifest", sweep_cmd.manifest, "sweep manifest")->required();
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_flag("--dry-run", sweep_cmd.dry_run, "print the run plan only");

  // report
  auto* report = app.add_subcommand("report", "summarize a run, a sweep or a time-cost table");
  std::string report_target;
  report->add_option("target", report_target, "run dir, sweep dir or CSV")->required();

  // export-plots
  auto* exportp = app.add_subcommand("export-plots", "write tidy x,y,series CSVs for plotting");
  std::string export_dir;
  std::string export_out;
  exportp->add_option("dir", export_dir, "run or sweep directory")->required();
  exportp->add_option("--out", export_out, "output directory (default <dir>/plots)");

  // play
  auto* play = app.add_subcommand("play", "play a checkpoint against an opponent");
  cli::PlayCommand play_cmd;
  std::string opponent_ckpt;
  play->add_option("checkpoint", play_cmd.checkpoint, "model checkpoint")->required();
  play->add_option("--opponent", play_cmd.opponent, "random | checkpoint | human-stdin")
      ->check(CLI::IsMember({"random", "checkpoint", "human-stdin"}));
  play->add_option("--opponent-checkpoint", opponent_ckpt, "opponent model (default: same)");
  play->add_option("--games", play_cmd.games, "number of games");
  play->add_option("--mctssimu", play_cmd.mctssimu, "search simulations per move");
  play->add_option("--Cpuct", play_cmd.cpuct, "exploration constant");
  play->add_option("--seed", play_cmd.seed, "seed");
  play->add_option("--human-color", play_cmd.human_color, "B or W");
  play->add_flag("--show-boards", play_cmd.show_boards, "print final boards");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  if (train->parsed()) {
    cli::RunConfig config;
    try {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw azsweep::ConfigError("config", "cannot open " + config_path);
        config = cli::parse_run_config(in);
      }
      for (const auto& [key, value] : flag_values) cli::set_config_value(config, key, value);
    } catch (const azsweep::ConfigError& e) {
      std::cerr << "config error [" << e.key() << "]: " << e.what() << "\n";
      return cli::kExitConfig;
    }
    return cli::cmd_train(config, io);
  }
  if (sweep->parsed()) {
    if (!sweep_out.empty()) sweep_cmd.output = sweep_out;
    return cli::cmd_sweep(sweep_cmd, io);
  }
  if (report->parsed()) return cli::cmd_report(report_target, io);
  if (exportp->parsed()) {
    std::optional<std::filesystem::path> out;
    if (!export_out.empty()) out = export_out;
    return cli::cmd_export_plots(export_dir, out, io);
  }
  if (play->parsed()) {
    if (!opponent_ckpt.empty()) play_cmd.opponent_checkpoint = opponent_ckpt;
    return cli::cmd_play(play_cmd, io);
  }
  return cli::kExitConfig;
}
