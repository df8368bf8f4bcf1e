#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "azsweep/cli/commands.hpp"
#include "azsweep/cli/manifest.hpp"
#include "azsweep/cli/run_config.hpp"
#include "azsweep/util/errors.hpp"

#ifndef AZSWEEP_DATA_DIR
#error "AZSWEEP_DATA_DIR must point at the data/ directory"
#endif

namespace azsweep::cli {
namespace {

namespace fs = std::filesystem;

struct Captured {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  Streams io{in, out, err};

  explicit Captured(std::string input = "") : in(std::move(input)) {}
};

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

std::string tiny_config(const fs::path& out) {
  return "game = othello4\n"
         "seed = 5\n"
         "iteration = 2\nepisode = 2\nmctssimu = 4\narenacompare = 2\n"
         "epoch = 2\nbatchsize = 16\n"
         "hidden = 16\n"
         "rating_anchor_games = 2\nrating_previous_games = 2\n"
         "output = " + out.string() + "\n";
}

class CliDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("azsweep_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST(RunConfigParse, KeysCommentsAndDefaults) {
  const RunConfig c = parse(
      "# baseline\n"
      "game = othello4\n"
      "seed = 42   # fixed\n"
      "episode=12\n"
      "learningrate = 0.01\n"
      "hidden = 64, 32\n"
      "activation = tanh\n"
      "augment = true\n"
      "rating_k = staged\n"
      "budget.iteration = 3\n");
  EXPECT_EQ(c.ps.board_size, 4);
  EXPECT_TRUE(c.seed_given);
  EXPECT_EQ(c.ps.seed, 42u);
  EXPECT_EQ(c.ps.episode, 12);
  EXPECT_EQ(c.ps.learning_rate, 0.01);
  EXPECT_EQ(c.hidden, (std::vector<int>{64, 32}));
  EXPECT_EQ(c.activation, nn::Activation::tanh);
  EXPECT_TRUE(c.augment);
  EXPECT_TRUE(c.rating_options().k_policy.two_stage);
  EXPECT_EQ(c.effective_parameters().iteration, 3);
  EXPECT_EQ(c.network_config().board_size, 4);
  EXPECT_EQ(c.ps.mcts_simulations, 100);  // untouched default
}

TEST(RunConfigParse, ErrorsNameTheKey) {
  auto key_of = [](const std::string& text) {
    try {
      parse(text).effective_parameters();
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of("updateThreshold = 1.5\n"), "updateThreshold");
  EXPECT_EQ(key_of("colour = red\n"), "colour");
  EXPECT_EQ(key_of("episode = ten\n"), "episode");
  EXPECT_EQ(key_of("game = chess\n"), "game");
  EXPECT_EQ(key_of("budget.nope = 3\n"), "budget.nope");
  std::istringstream missing_eq("seed = 1\nepisode 4\n");
  try {
    parse_key_values(missing_eq);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);  // line number
  }
}

TEST(RunConfigParse, SnapshotRoundTrips) {
  RunConfig c = parse("game = othello4\nseed = 9\nCpuct = 1.5\nhidden = 8\nbudget.episode = 3\n");
  const RunConfig back = parse(format_run_config(c));
  EXPECT_EQ(back.ps, c.ps);
  EXPECT_EQ(back.hidden, c.hidden);
  EXPECT_EQ(back.budget, c.budget);
  EXPECT_EQ(format_run_config(back), format_run_config(c));
}

TEST(RunConfigParse, MissingSeedIsDrawnAndRecorded) {
  RunConfig c = parse("episode = 3\n");
  EXPECT_FALSE(c.seed_given);
  ensure_seed(c);
  EXPECT_TRUE(c.seed_given);
  EXPECT_NE(format_run_config(c).find(fmt::format("seed = {}", c.ps.seed)), std::string::npos);
}

TEST(Manifest, ParsesGridBudgetAndParameters) {
  std::istringstream in(
      "game = othello4\nseed = 3\n"
      "parameters = episode, Cpuct\n"
      "grid.Cpuct = 0.25, 1, 4\n"
      "budget = none\n"
      "budget.iteration = 2\n"
      "parallel = true\n");
  const SweepManifest m = parse_manifest(in);
  ASSERT_EQ(m.grid.entries.size(), 2u);
  EXPECT_EQ(m.grid.entries[0].parameter, "episode");
  EXPECT_EQ(m.grid.find("Cpuct")->min, 0.25);
  EXPECT_EQ(m.budget.values, (std::map<std::string, double>{{"iteration", 2}}));
  EXPECT_TRUE(m.parallel);
  EXPECT_EQ(m.base.ps.board_size, 4);

  std::istringstream desk("parameters = epoch\n");
  EXPECT_EQ(parse_manifest(desk).budget.values, sweep::BudgetOverrides::desk().values);

  std::istringstream bad("parameters = episode, bogus\n");
  EXPECT_THROW(parse_manifest(bad), ConfigError);
}

TEST(Report, TimeFixtureReproducesTypes) {
  Captured c;
  const int code = cmd_report(fs::path(AZSWEEP_DATA_DIR) / "reference_time_cost.csv", c.io);
  EXPECT_EQ(code, kExitOk);
  EXPECT_NE(c.out.str().find("12/12 types match"), std::string::npos) << c.out.str();
}

TEST(Report, MissingTargetIsAnError) {
  Captured c;
  EXPECT_NE(cmd_report("/nonexistent/azsweep", c.io), kExitOk);
  EXPECT_FALSE(c.err.str().empty());
}

TEST_F(CliDir, TrainReportExportAndPlay) {
  const fs::path run = dir_ / "run";
  {
    Captured c;
    ASSERT_EQ(cmd_train(parse(tiny_config(run)), c.io), kExitOk) << c.err.str();
  }
  for (const char* f : {"config.txt", "metrics.csv", "epochs.csv", "time_breakdown.csv",
                        "events.jsonl", "iter_0.ckpt", "best.ckpt", "rating_games.csv",
                        "elo_curve.csv"}) {
    EXPECT_TRUE(fs::exists(run / f)) << f;
  }
  {
    // The snapshot reproduces the configuration.
    std::ifstream in(run / "config.txt");
    const RunConfig snap = parse_run_config(in);
    EXPECT_EQ(snap.ps, parse(tiny_config(run)).ps);
  }
  {
    Captured c;
    EXPECT_EQ(cmd_report(run, c.io), kExitOk) << c.err.str();
    EXPECT_NE(c.out.str().find("time:"), std::string::npos);
  }
  {
    Captured c;
    EXPECT_EQ(cmd_export_plots(run, std::nullopt, c.io), kExitOk) << c.err.str();
    for (const char* f : {"loss_by_epoch.csv", "loss_by_iteration.csv", "elo_by_iteration.csv",
                          "time_breakdown.csv"}) {
      std::ifstream in(run / "plots" / f);
      std::string header;
      std::getline(in, header);
      EXPECT_EQ(header, "x,y,series") << f;
      std::string row;
      EXPECT_TRUE(static_cast<bool>(std::getline(in, row))) << f << " has no data";
    }
  }
  {
    Captured c;
    PlayCommand cmd;
    cmd.checkpoint = run / "best.ckpt";
    cmd.games = 4;
    cmd.mctssimu = 4;
    EXPECT_EQ(cmd_play(cmd, c.io), kExitOk) << c.err.str();
    EXPECT_NE(c.out.str().find("win rate"), std::string::npos);
  }
  {
    // Bad move first, then every square name in turn until the game ends.
    std::string input = "zz\n";
    for (int round = 0; round < 40; ++round) {
      for (char col = 'a'; col <= 'd'; ++col) {
        for (int row = 1; row <= 4; ++row) input += fmt::format("{}{}\n", col, row);
      }
      input += "pass\n";
    }
    Captured c(input);
    PlayCommand cmd;
    cmd.checkpoint = run / "best.ckpt";
    cmd.opponent = "human-stdin";
    cmd.mctssimu = 4;
    EXPECT_EQ(cmd_play(cmd, c.io), kExitOk) << c.err.str();
    EXPECT_NE(c.out.str().find("illegal move 'zz', try again"), std::string::npos);
    EXPECT_TRUE(c.out.str().find("wins") != std::string::npos ||
                c.out.str().find("draw") != std::string::npos);
  }
}

TEST_F(CliDir, ExitCodes) {
  {
    Captured c;
    EXPECT_EQ(cmd_train(parse("updateThreshold = 0.6\ngame = othello4\nepisode = 0\noutput = " +
                              (dir_ / "x").string() + "\n"),
                        c.io),
              kExitConfig);
    EXPECT_NE(c.err.str().find("episode"), std::string::npos);
  }
  {
    Captured c;
    PlayCommand cmd;
    cmd.checkpoint = dir_ / "missing.ckpt";
    EXPECT_EQ(cmd_play(cmd, c.io), kExitRuntime);
  }
  {
    Captured c;
    EXPECT_EQ(cmd_export_plots(dir_ / "nothing", std::nullopt, c.io), kExitRuntime);
  }
}

TEST_F(CliDir, SweepDryRunAndMiniSweep) {
  const fs::path manifest = dir_ / "sweep.txt";
  {
    std::ofstream out(manifest);
    out << "game = othello4\nseed = 2\nepoch = 1\nbatchsize = 16\nhidden = 8\n"
           "rating_anchor_games = 2\nrating_previous_games = 2\n"
           "parameters = tempThreshold\n"
           "budget = none\nbudget.iteration = 2\nbudget.episode = 2\nbudget.mctssimu = 3\n"
           "budget.arenacompare = 2\n";
  }
  {
    Captured c;
    EXPECT_EQ(cmd_sweep({manifest, dir_ / "sweep", true}, c.io), kExitOk) << c.err.str();
    EXPECT_NE(c.out.str().find("tempThreshold_max"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "sweep" / "sweep_report.csv"));
  }
  {
    Captured c;
    EXPECT_EQ(cmd_sweep({manifest, dir_ / "sweep", false}, c.io), kExitOk) << c.err.str();
    for (const char* f : {"manifest.txt", "sweep_report.csv", "summary.csv", "summary.txt"}) {
      EXPECT_TRUE(fs::exists(dir_ / "sweep" / f)) << f;
    }
  }
  {
    Captured c;
    EXPECT_EQ(cmd_report(dir_ / "sweep", c.io), kExitOk) << c.err.str();
    EXPECT_NE(c.out.str().find("tempThreshold"), std::string::npos);
  }
  {
    Captured c;
    EXPECT_EQ(cmd_export_plots(dir_ / "sweep", std::nullopt, c.io), kExitOk) << c.err.str();
    EXPECT_TRUE(fs::exists(dir_ / "sweep" / "plots" / "loss_by_iteration.csv"));
  }
}

}  // namespace
}  // namespace azsweep::cli
