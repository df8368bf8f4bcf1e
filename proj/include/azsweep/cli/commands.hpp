#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "azsweep/cli/run_config.hpp"

namespace azsweep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Trains into config.output, then rates the accepted checkpoints.
int cmd_train(RunConfig config, const Streams& io);

struct SweepCommand {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> output;  // overrides the manifest's output
  bool dry_run = false;
};
int cmd_sweep(const SweepCommand& cmd, const Streams& io);

// `target` is a sweep directory, a run directory, or a CSV of
// parameter,t_min,t_default,t_max[,type] rows (hours or seconds).
int cmd_report(const std::filesystem::path& target, const Streams& io);

// Writes loss_by_epoch.csv, loss_by_iteration.csv, elo_by_iteration.csv and
// time_breakdown.csv (columns x,y,series) for a run or sweep directory.
int cmd_export_plots(const std::filesystem::path& dir,
                     std::optional<std::filesystem::path> output, const Streams& io);

struct PlayCommand {
  std::filesystem::path checkpoint;
  std::string opponent = "random";  // random | checkpoint | human-stdin
  std::optional<std::filesystem::path> opponent_checkpoint;  // default: same checkpoint
  int games = 10;
  int mctssimu = 25;
  double cpuct = 1.0;
  std::uint64_t seed = 0;
  std::string human_color = "B";
  bool show_boards = false;
};
int cmd_play(const PlayCommand& cmd, const Streams& io);

}  // namespace azsweep::cli
