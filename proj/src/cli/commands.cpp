#include "azsweep/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "azsweep/cli/manifest.hpp"
#include "azsweep/instrumentation/cost_model.hpp"
#include "azsweep/nn/checkpoint.hpp"
#include "azsweep/pipeline/arena.hpp"
#include "azsweep/pipeline/players.hpp"
#include "azsweep/pipeline/run_directory.hpp"
#include "azsweep/sweep/sweep.hpp"
#include "azsweep/util/csv.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::cli {

namespace fs = std::filesystem;
using instrumentation::Phase;

namespace {

template <class Fn>
int guarded(const Streams& io, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    io.err << "config error";
    if (!e.key().empty()) io.err << " [" << e.key() << "]";
    io.err << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const pipeline::TrainingAborted& e) {
    io.err << "run aborted after " << e.partial().size() << " iteration(s): " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
}

std::string fixed(double v, int digits) {
  return std::isnan(v) ? std::string("-") : fmt::format("{:.{}f}", v, digits);
}

std::string sweep_snapshot(const RunConfig& base, const pipeline::ParameterSet& ps,
                           const fs::path& dir) {
  RunConfig c = base;
  c.ps = ps;
  c.seed_given = true;
  c.budget.clear();
  c.output = dir.string();
  return format_run_config(c);
}

}  // namespace

int cmd_train(RunConfig config, const Streams& io) {
  return guarded(io, [&] {
    ensure_seed(config);
    const pipeline::ParameterSet ps = config.effective_parameters();
    pipeline::CoachOptions coach = config.coach_options();
    coach.verbose = true;
    io.out << fmt::format("training {} into {} (seed {})\n", config.game, config.output, ps.seed);
    io.out.flush();
    pipeline::RunDirectory dir(config.output, format_run_config(config));
    const pipeline::RunOutcome run =
        pipeline::execute_run(ps, coach, config.rating_options(), &dir);
    const auto& recs = run.training.records;
    const double elo = recs.empty() ? std::nan("") : recs.back().elo;
    io.out << fmt::format("done: {} iterations, {} accepted, final loss {}, elo {}, {:.1f}s\n",
                          recs.size(), run.training.accepted.size() - 1,
                          recs.empty() ? "-" : fixed(recs.back().mean_loss().total, 4),
                          fixed(elo, 1), run.training.wall_s);
    return kExitOk;
  });
}

int cmd_sweep(const SweepCommand& cmd, const Streams& io) {
  return guarded(io, [&] {
    std::ifstream in(cmd.manifest);
    if (!in) throw ConfigError("manifest", fmt::format("cannot open {}", cmd.manifest.string()));
    SweepManifest m = parse_manifest(in);
    ensure_seed(m.base);
    const fs::path root = cmd.output ? *cmd.output : fs::path(m.base.output);
    const auto runs = sweep::generate_runs(m.base.ps, m.grid);

    io.out << fmt::format("sweep: {} runs into {} (seed {}){}\n", runs.size(), root.string(),
                          m.base.ps.seed, m.parallel ? ", parallel" : "");
    for (const auto& r : runs) {
      const auto ps = m.budget.apply(r);
      io.out << fmt::format("  {:<22} iteration={} episode={} mctssimu={} arenacompare={}\n", r.name,
                            ps.iteration, ps.episode, ps.mcts_simulations, ps.arena_compare);
      if (!r.parameter.empty() && m.budget.values.contains(r.parameter)) {
        io.out << fmt::format("    ({} is budget-scaled: {} -> {})\n", r.parameter,
                              pipeline::format_parameter_value(r.parameter, r.value),
                              pipeline::format_parameter_value(
                                  r.parameter, pipeline::get_parameter(ps, r.parameter)));
      }
    }
    if (cmd.dry_run) return kExitOk;

    fs::create_directories(root);
    {
      std::ostringstream manifest_copy;
      manifest_copy << std::ifstream(cmd.manifest).rdbuf();
      write_text(root / "manifest.txt", manifest_copy.str() +
                                            fmt::format("\n# resolved\nseed = {}\n", m.base.ps.seed));
    }

    sweep::PipelineRunnerOptions ro;
    ro.output_root = root;
    ro.coach = m.base.coach_options();
    ro.rating = m.base.rating_options();
    const RunConfig base = m.base;
    ro.config_snapshot = [base, root](const pipeline::ParameterSet& ps) {
      return sweep_snapshot(base, ps, root);
    };
    sweep::SweepOptions so;
    so.parallel = m.parallel;
    so.threads = m.parallel ? static_cast<int>(runs.size()) : 1;
    so.on_run_done = [&](const sweep::RunResult& r) {
      if (r.ok) {
        io.out << fmt::format("  {:<22} loss {:.4f}  elo {}  {:.1f}s\n", r.run.name,
                              r.metrics.final_loss, fixed(r.metrics.final_elo, 1),
                              r.metrics.total_time_s);
      } else {
        io.out << fmt::format("  {:<22} FAILED: {}\n", r.run.name, r.error);
      }
      io.out.flush();
    };
    const sweep::SweepReport report =
        sweep::run_sweep(runs, m.budget, sweep::pipeline_runner(ro), so);

    std::ostringstream report_csv;
    sweep::write_report_csv(report_csv, report);
    write_text(root / "sweep_report.csv", report_csv.str());
    const sweep::SweepSummary summary = sweep::summarize(report);
    std::ostringstream summary_csv;
    sweep::write_summary_csv(summary_csv, summary);
    write_text(root / "summary.csv", summary_csv.str());
    std::ostringstream text;
    sweep::render_summary(text, summary);
    write_text(root / "summary.txt", text.str());
    io.out << text.str();

    const bool all_failed = std::none_of(report.runs.begin(), report.runs.end(),
                                         [](const auto& r) { return r.ok; });
    return all_failed ? kExitRuntime : kExitOk;
  });
}

namespace {

int report_time_fixture(const fs::path& path, const Streams& io) {
  std::ifstream in(path);
  if (!in) throw FormatError(fmt::format("cannot open {}", path.string()));
  const CsvTable t = read_csv(in);
  t.require_columns({"parameter", "t_min", "t_default", "t_max"});
  const bool has_type = t.has_column("type");
  io.out << fmt::format("{:<16} {:>8} {:>8} {:>8} {:>7}  {:<15}{}\n", "parameter", "min", "default",
                        "max", "ratio", "type", has_type ? "  listed" : "");
  int matches = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::string& p = t.get(r, "parameter");
    const instrumentation::TimeTriple tt{t.get_double(r, "t_min"), t.get_double(r, "t_default"),
                                         t.get_double(r, "t_max")};
    const auto type = instrumentation::classify(p, tt);
    const double ratio = std::max({tt.t_min, tt.t_default, tt.t_max}) /
                         std::min({tt.t_min, tt.t_default, tt.t_max});
    std::string listed;
    if (has_type) {
      listed = t.get(r, "type");
      if (listed == instrumentation::to_string(type)) ++matches;
      listed = fmt::format("  {}{}", listed, listed == instrumentation::to_string(type) ? "" : "  MISMATCH");
    }
    io.out << fmt::format("{:<16} {:>8} {:>8} {:>8} {:>7.3f}  {:<15}{}\n", p, tt.t_min, tt.t_default,
                          tt.t_max, ratio, instrumentation::to_string(type), listed);
  }
  if (has_type) io.out << fmt::format("{}/{} types match\n", matches, t.rows.size());
  return kExitOk;
}

int report_sweep(const fs::path& csv, const Streams& io) {
  std::ifstream in(csv);
  const sweep::SweepReport report = sweep::read_report_csv(in);
  io.out << fmt::format("{} runs ({} failed){}\n", report.runs.size(),
                        std::count_if(report.runs.begin(), report.runs.end(),
                                      [](const auto& r) { return !r.ok; }),
                        report.parallel ? ", parallel: no time classification" : "");
  sweep::render_summary(io.out, sweep::summarize(report));
  return kExitOk;
}

int report_run(const fs::path& dir, const Streams& io) {
  const pipeline::RunData data = pipeline::load_run(dir);
  if (!data.ok()) {
    for (const auto& p : data.problems) io.err << p << "\n";
    return kExitRuntime;
  }
  io.out << fmt::format("{:>4} {:>9} {:>9} {:>9} {:>9} {:>6} {:>8} {:>9} {:>9} {:>9}\n", "iter",
                        "loss", "loss_pi", "loss_v", "arena", "acc", "elo", "selfplay_s", "train_s",
                        "arena_s");
  for (std::size_t i = 0; i < data.metrics.size(); ++i) {
    const auto& m = data.metrics[i];
    const instrumentation::PhaseBreakdown* b = nullptr;
    for (const auto& row : data.timing) {
      if (row.iteration == m.iteration) b = &row;
    }
    io.out << fmt::format("{:>4} {:>9.4f} {:>9.4f} {:>9.4f} {:>9} {:>6} {:>8} {:>9} {:>9} {:>9}\n",
                          m.iteration, m.loss_total, m.loss_pi, m.loss_v,
                          fmt::format("{}-{}-{}", m.wins, m.losses, m.draws),
                          m.accepted ? "yes" : "no", fixed(m.elo, 1),
                          b ? fixed(b->phase_seconds(Phase::self_play), 2) : "-",
                          b ? fixed(b->phase_seconds(Phase::train), 2) : "-",
                          b ? fixed(b->phase_seconds(Phase::arena), 2) : "-");
  }
  double phases = 0.0;
  double total = 0.0;
  for (const auto& b : data.timing) {
    phases += b.phase_sum();
    total += b.total_s;
  }
  io.out << fmt::format("time: phases {:.2f}s of {:.2f}s measured\n", phases, total);
  return kExitOk;
}

}  // namespace

int cmd_report(const fs::path& target, const Streams& io) {
  return guarded(io, [&] {
    if (fs::is_directory(target)) {
      if (fs::exists(target / "sweep_report.csv")) return report_sweep(target / "sweep_report.csv", io);
      if (fs::exists(target / "metrics.csv")) return report_run(target, io);
      io.err << fmt::format("{}: neither a sweep nor a run directory\n", target.string());
      return kExitRuntime;
    }
    if (!fs::exists(target)) {
      io.err << fmt::format("{}: missing\n", target.string());
      return kExitRuntime;
    }
    std::ifstream probe(target);
    std::string header;
    std::getline(probe, header);
    if (header.starts_with("name,parameter,level")) return report_sweep(target, io);
    return report_time_fixture(target, io);
  });
}

namespace {

struct PlotFiles {
  std::ostringstream epoch, iteration, elo, time;
};

void add_run(PlotFiles& f, const pipeline::RunData& d, const std::string& label) {
  auto series = [&](std::string_view what) {
    return label.empty() ? std::string(what) : fmt::format("{}:{}", label, what);
  };
  for (const auto& e : d.epochs) {
    const std::string s = series(fmt::format("iter_{}", e.iteration));
    f.epoch << fmt::format("{},{:.17g},{}\n", e.epoch, e.loss_total, csv_escape(s + ":total"));
    f.epoch << fmt::format("{},{:.17g},{}\n", e.epoch, e.loss_pi, csv_escape(s + ":pi"));
    f.epoch << fmt::format("{},{:.17g},{}\n", e.epoch, e.loss_v, csv_escape(s + ":v"));
  }
  for (const auto& m : d.metrics) {
    f.iteration << fmt::format("{},{:.17g},{}\n", m.iteration, m.loss_total, csv_escape(series("total")));
    f.iteration << fmt::format("{},{:.17g},{}\n", m.iteration, m.loss_pi, csv_escape(series("pi")));
    f.iteration << fmt::format("{},{:.17g},{}\n", m.iteration, m.loss_v, csv_escape(series("v")));
    if (!std::isnan(m.elo)) {
      f.elo << fmt::format("{},{:.17g},{}\n", m.iteration, m.elo, csv_escape(series("elo")));
    }
  }
  for (const auto& b : d.timing) {
    for (Phase p : instrumentation::kPhases) {
      f.time << fmt::format("{},{:.6f},{}\n", b.iteration, b.phase_seconds(p),
                            csv_escape(series(instrumentation::phase_name(p))));
    }
    f.time << fmt::format("{},{:.6f},{}\n", b.iteration, b.total_s, csv_escape(series("total")));
  }
}

}  // namespace

int cmd_export_plots(const fs::path& dir, std::optional<fs::path> output, const Streams& io) {
  return guarded(io, [&] {
    if (!fs::is_directory(dir)) {
      io.err << fmt::format("{}: not a directory\n", dir.string());
      return kExitRuntime;
    }
    std::vector<std::pair<fs::path, std::string>> runs;
    if (fs::exists(dir / "sweep_report.csv")) {
      std::ifstream in(dir / "sweep_report.csv");
      for (const auto& r : sweep::read_report_csv(in).runs) {
        if (r.ok) runs.emplace_back(dir / r.run.name, r.run.name);
      }
    } else {
      runs.emplace_back(dir, "");
    }

    PlotFiles files;
    std::vector<std::string> problems;
    for (const auto& [path, label] : runs) {
      const pipeline::RunData d = pipeline::load_run(path, true);
      problems.insert(problems.end(), d.problems.begin(), d.problems.end());
      if (d.ok()) add_run(files, d, label);
    }
    if (!problems.empty()) {
      for (const auto& p : problems) io.err << p << "\n";
      return kExitRuntime;
    }
    const fs::path out = output ? *output : dir / "plots";
    fs::create_directories(out);
    const std::string header = "x,y,series\n";
    write_text(out / "loss_by_epoch.csv", header + files.epoch.str());
    write_text(out / "loss_by_iteration.csv", header + files.iteration.str());
    write_text(out / "elo_by_iteration.csv", header + files.elo.str());
    write_text(out / "time_breakdown.csv", header + files.time.str());
    io.out << fmt::format("wrote 4 series files to {}\n", out.string());
    return kExitOk;
  });
}

namespace {

class HumanPlayer final : public pipeline::Player {
 public:
  explicit HumanPlayer(const Streams& io) : io_(io) {}

  othello::MoveId choose(const othello::GameState& state, Rng& /*rng*/,
                         pipeline::MoveStats& /*stats*/) const override {
    const auto legal = othello::legal_moves(state);
    std::vector<std::string> names;
    for (const auto& m : legal) names.push_back(othello::move_name(m, state.size()));
    while (true) {
      io_.out << othello::format_board(state);
      io_.out << fmt::format("your move ({}): ", fmt::join(names, " "));
      io_.out.flush();
      std::string line;
      if (!std::getline(io_.in, line)) throw std::runtime_error("input closed");
      const auto b = line.find_first_not_of(" \t\r");
      const auto e = line.find_last_not_of(" \t\r");
      line = b == std::string::npos ? std::string() : line.substr(b, e - b + 1);
      const auto move = othello::parse_move_name(line, state.size());
      if (move && std::find(legal.begin(), legal.end(), *move) != legal.end()) return *move;
      io_.out << fmt::format("illegal move '{}', try again\n", line);
    }
  }

 private:
  const Streams& io_;
};

std::string outcome_text(const othello::GameState& final_state) {
  const int b = final_state.count(othello::Player::black);
  const int w = final_state.count(othello::Player::white);
  if (b == w) return fmt::format("draw {}-{}", b, w);
  return fmt::format("{} wins {}-{}", b > w ? "black" : "white", std::max(b, w), std::min(b, w));
}

}  // namespace

int cmd_play(const PlayCommand& cmd, const Streams& io) {
  return guarded(io, [&] {
    if (cmd.games < 1) throw ConfigError("games", "games must be >= 1");
    if (cmd.mctssimu < 1) throw ConfigError("mctssimu", "mctssimu must be >= 1");
    if (!(cmd.cpuct > 0.0)) throw ConfigError("Cpuct", "Cpuct must be > 0");
    const nn::Network net = nn::load_checkpoint(cmd.checkpoint);
    const int board = net.config().board_size;
    const pipeline::NetworkEvaluator eval(net);
    const mcts::SearchOptions search{cmd.cpuct, cmd.mctssimu};
    const pipeline::MctsPlayer model(eval, search);

    if (cmd.opponent == "human-stdin") {
      const HumanPlayer human(io);
      const bool human_black = cmd.human_color == "B";
      if (!human_black && cmd.human_color != "W") {
        throw ConfigError("human-color", "human color must be B or W");
      }
      Rng rng(cmd.seed);
      const auto rec = human_black ? pipeline::play_game(human, model, board, rng)
                                   : pipeline::play_game(model, human, board, rng);
      io.out << othello::format_board(rec.final_state);
      io.out << outcome_text(rec.final_state) << "\n";
      return kExitOk;
    }

    std::optional<nn::Network> other;
    std::optional<pipeline::NetworkEvaluator> other_eval;
    std::optional<pipeline::MctsPlayer> other_player;
    const pipeline::RandomPlayer random;
    const pipeline::Player* opponent = &random;
    if (cmd.opponent == "checkpoint") {
      other = cmd.opponent_checkpoint
                  ? nn::load_checkpoint(*cmd.opponent_checkpoint, net.config().action_count)
                  : net;
      other_eval.emplace(*other);
      other_player.emplace(*other_eval, search);
      opponent = &*other_player;
    } else if (cmd.opponent != "random") {
      throw ConfigError("opponent", "opponent must be random, checkpoint or human-stdin");
    }

    int wins = 0, losses = 0, draws = 0;
    for (int g = 0; g < cmd.games; ++g) {
      Rng rng(derive_seed({cmd.seed, static_cast<std::uint64_t>(g)}));
      const bool model_black = g % 2 == 0;
      const auto rec = model_black ? pipeline::play_game(model, *opponent, board, rng)
                                   : pipeline::play_game(*opponent, model, board, rng);
      const auto res = othello::terminal_value(
          rec.final_state, model_black ? othello::Player::black : othello::Player::white);
      const char* word = "draw";
      if (*res == othello::Outcome::win) { ++wins; word = "win"; }
      else if (*res == othello::Outcome::loss) { ++losses; word = "loss"; }
      else { ++draws; }
      if (cmd.show_boards) io.out << othello::format_board(rec.final_state);
      io.out << fmt::format("game {:>3}: model plays {}, {} ({})\n", g + 1,
                            model_black ? "black" : "white", word, outcome_text(rec.final_state));
    }
    io.out << fmt::format("model vs {}: {} wins, {} losses, {} draws, win rate {:.3f}\n",
                          cmd.opponent, wins, losses, draws,
                          static_cast<double>(wins) / cmd.games);
    return kExitOk;
  });
}

}  // namespace azsweep::cli
