#include "azsweep/sweep/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "azsweep/pipeline/run_directory.hpp"
#include "azsweep/util/csv.hpp"
#include "azsweep/util/errors.hpp"
#include "azsweep/util/parallel.hpp"

namespace azsweep::sweep {

using pipeline::ParameterSet;

SweepGrid SweepGrid::standard() {
  return {{
      {"iteration", 50, 100, 150},
      {"episode", 10, 50, 100},
      {"tempThreshold", 10, 15, 20},
      {"mctssimu", 25, 100, 200},
      {"Cpuct", 0.5, 1.0, 2.0},
      {"retrainlength", 1, 20, 40},
      {"epoch", 5, 10, 15},
      {"batchsize", 32, 64, 96},
      {"learningrate", 0.001, 0.005, 0.01},
      {"dropout", 0.2, 0.3, 0.4},
      {"arenacompare", 20, 40, 100},
      {"updateThreshold", 0.5, 0.6, 0.7},
  }};
}

const GridEntry* SweepGrid::find(std::string_view parameter) const {
  for (const GridEntry& e : entries) {
    if (e.parameter == parameter) return &e;
  }
  return nullptr;
}

void SweepGrid::set(const GridEntry& entry) {
  for (GridEntry& e : entries) {
    if (e.parameter == entry.parameter) {
      e = entry;
      return;
    }
  }
  entries.push_back(entry);
}

SweepGrid SweepGrid::restricted(std::span<const std::string> parameters) const {
  SweepGrid out;
  for (const std::string& p : parameters) {
    const GridEntry* e = find(p);
    if (!e) throw ConfigError(p, fmt::format("'{}' is not in the sweep grid", p));
    out.entries.push_back(*e);
  }
  return out;
}

std::vector<SweepRun> generate_runs(const ParameterSet& baseline, const SweepGrid& grid) {
  baseline.validate();
  std::vector<SweepRun> runs;
  runs.push_back({"baseline", "", "default", 0.0, 0.0, baseline});
  for (const GridEntry& e : grid.entries) {
    if (!pipeline::find_parameter(e.parameter)) {
      throw ConfigError(e.parameter, fmt::format("unknown sweep parameter '{}'", e.parameter));
    }
    if (!(e.min <= e.def && e.def <= e.max)) {
      throw ConfigError(e.parameter, fmt::format("{}: grid needs min <= default <= max", e.parameter));
    }
    for (const auto& [level, value] : {std::pair{"min", e.min}, std::pair{"max", e.max}}) {
      SweepRun run{fmt::format("{}_{}", e.parameter, level), e.parameter, level, value, e.def,
                   baseline};
      try {
        pipeline::set_parameter(run.ps, e.parameter, value);
        run.ps.validate();
      } catch (const ConfigError& err) {
        throw ConfigError(e.parameter, fmt::format("{} {}: {}", e.parameter, level, err.what()));
      }
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

BudgetOverrides BudgetOverrides::desk() {
  return {{{"iteration", 15}, {"episode", 10}, {"mctssimu", 25}, {"arenacompare", 10}}};
}

ParameterSet BudgetOverrides::apply(const SweepRun& run) const {
  ParameterSet ps = run.ps;
  for (const auto& [key, value] : values) {
    const auto spec = pipeline::find_parameter(key);
    if (!spec) throw ConfigError(key, fmt::format("unknown budget parameter '{}'", key));
    double v = value;
    if (key == run.parameter && run.grid_default != 0.0) {
      v = run.value * value / run.grid_default;
      if (spec->kind == pipeline::ParameterKind::count) v = std::max(1.0, std::round(v));
    }
    pipeline::set_parameter(ps, key, v);
  }
  ps.validate();
  return ps;
}

RunMetrics metrics_from(std::span<const pipeline::IterationRecord> records, double wall_s) {
  RunMetrics m;
  m.iterations = static_cast<int>(records.size());
  m.total_time_s = wall_s;
  for (const auto& r : records) m.iteration_loss.push_back(r.mean_loss().total);
  const std::size_t tail = std::min<std::size_t>(3, m.iteration_loss.size());
  m.final_loss = tail == 0 ? std::numeric_limits<double>::quiet_NaN()
                           : std::accumulate(m.iteration_loss.end() - static_cast<long>(tail),
                                             m.iteration_loss.end(), 0.0) /
                                 static_cast<double>(tail);
  m.final_elo = records.empty() ? std::numeric_limits<double>::quiet_NaN() : records.back().elo;
  return m;
}

SweepReport run_sweep(std::span<const SweepRun> runs, const BudgetOverrides& budget,
                      const Runner& runner, const SweepOptions& options) {
  SweepReport report;
  report.parallel = options.parallel;
  report.runs.resize(runs.size());
  const int threads = options.parallel ? std::max(1, options.threads) : 1;
  parallel_for(runs.size(), threads, [&](std::size_t i) {
    RunResult& r = report.runs[i];
    r.run = runs[i];
    try {
      r.effective = budget.apply(runs[i]);
      r.metrics = runner(runs[i], r.effective);
      r.ok = true;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    if (options.on_run_done) options.on_run_done(r);
  });
  return report;
}

Runner pipeline_runner(PipelineRunnerOptions options) {
  return [options = std::move(options)](const SweepRun& run, const ParameterSet& ps) {
    const std::string snapshot = options.config_snapshot ? options.config_snapshot(ps) : "";
    pipeline::RunDirectory dir(options.output_root / run.name, snapshot);
    const pipeline::RunOutcome out = pipeline::execute_run(ps, options.coach, options.rating, &dir);
    return metrics_from(out.training.records, out.training.wall_s);
  };
}

namespace {

std::string value_label(const std::string& parameter, double v) {
  return pipeline::format_parameter_value(parameter, v);
}

}  // namespace

SweepSummary summarize(const SweepReport& report) {
  SweepSummary summary;
  const RunResult* baseline = nullptr;
  for (const RunResult& r : report.runs) {
    if (!r.ok) summary.failed_runs.push_back(r.run.name);
    if (r.run.parameter.empty() && r.ok) baseline = &r;
  }
  if (!baseline) return summary;

  for (const auto& spec : pipeline::kParameters) {
    const std::string parameter(spec.key);
    std::vector<const RunResult*> group{baseline};
    bool any_variant = false;
    for (const RunResult& r : report.runs) {
      if (r.ok && r.run.parameter == parameter) {
        group.push_back(&r);
        any_variant = true;
      }
    }
    if (!any_variant) continue;
    const double baseline_value = group[1]->run.grid_default;
    auto grid_value = [&](const RunResult* r) {
      return r == baseline ? baseline_value : r->run.value;
    };
    std::stable_sort(group.begin(), group.end(), [&](const RunResult* a, const RunResult* b) {
      return grid_value(a) < grid_value(b);
    });

    ParameterSummary s;
    s.parameter = parameter;
    for (const RunResult* r : group) {
      s.values.push_back(grid_value(r));
      s.losses.push_back(r->metrics.final_loss);
      s.elos.push_back(r->metrics.final_elo);
      s.times.push_back(r->metrics.total_time_s);
    }

    auto pick = [&](const std::vector<double>& xs, double tolerance, bool minimize) {
      if (std::any_of(xs.begin(), xs.end(), [](double x) { return std::isnan(x); })) {
        return std::string("n/a");
      }
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      if (*hi - *lo < tolerance) return std::string("similar");
      const auto best = minimize ? lo : hi;
      return value_label(parameter, s.values[static_cast<std::size_t>(best - xs.begin())]);
    };
    s.best_loss = pick(s.losses, kLossTolerance, true);
    s.best_elo = pick(s.elos, kEloTolerance, false);
    s.best_time = pick(s.times, 0.0, true);

    if (!report.parallel) {
      const double t_default = baseline->metrics.total_time_s;
      instrumentation::TimeTriple t{t_default, t_default, t_default};
      for (const RunResult* r : group) {
        if (r->run.level == "min") t.t_min = r->metrics.total_time_s;
        if (r->run.level == "max") t.t_max = r->metrics.total_time_s;
      }
      if (t.t_min > 0 && t.t_default > 0 && t.t_max > 0) s.type = instrumentation::classify(parameter, t);
    }
    summary.parameters.push_back(std::move(s));
  }
  return summary;
}

namespace {

std::string num(double v) { return std::isnan(v) ? std::string() : fmt::format("{:.17g}", v); }

}  // namespace

void write_report_csv(std::ostream& out, const SweepReport& report) {
  out << "name,parameter,level,value,grid_default,status,error,final_loss,final_elo,total_time_s,"
         "iterations,parallel\n";
  for (const RunResult& r : report.runs) {
    const bool base = r.run.parameter.empty();
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_escape(r.run.name),
                       csv_escape(r.run.parameter), r.run.level, base ? "" : num(r.run.value),
                       base ? "" : num(r.run.grid_default), r.ok ? "ok" : "failed",
                       csv_escape(r.error), num(r.metrics.final_loss), num(r.metrics.final_elo),
                       num(r.metrics.total_time_s), r.metrics.iterations, report.parallel ? 1 : 0);
  }
}

SweepReport read_report_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  t.require_columns({"name", "parameter", "level", "value", "grid_default", "status", "error", "final_loss",
                     "final_elo", "total_time_s", "iterations", "parallel"});
  SweepReport report;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    RunResult r;
    r.run.name = t.get(i, "name");
    r.run.parameter = t.get(i, "parameter");
    r.run.level = t.get(i, "level");
    if (!r.run.parameter.empty()) {
      r.run.value = t.get_double(i, "value");
      r.run.grid_default = t.get_double(i, "grid_default");
    }
    r.ok = t.get(i, "status") == "ok";
    r.error = t.get(i, "error");
    r.metrics.final_loss = t.get_double(i, "final_loss");
    r.metrics.final_elo = t.get_double(i, "final_elo");
    r.metrics.total_time_s = t.get_double(i, "total_time_s");
    r.metrics.iterations = static_cast<int>(t.get_int(i, "iterations"));
    if (t.get_int(i, "parallel") != 0) report.parallel = true;
    report.runs.push_back(std::move(r));
  }
  return report;
}

void write_summary_csv(std::ostream& out, const SweepSummary& summary) {
  out << "parameter,best_loss,best_elo,best_time,type\n";
  for (const ParameterSummary& s : summary.parameters) {
    out << fmt::format("{},{},{},{},{}\n", s.parameter, s.best_loss, s.best_elo, s.best_time,
                       s.type ? instrumentation::to_string(*s.type) : "n/a");
  }
}

void render_summary(std::ostream& out, const SweepSummary& summary) {
  out << fmt::format("{:<16} {:>10} {:>10} {:>10}  {}\n", "parameter", "loss", "elo", "time",
                     "type");
  for (const ParameterSummary& s : summary.parameters) {
    out << fmt::format("{:<16} {:>10} {:>10} {:>10}  {}\n", s.parameter, s.best_loss, s.best_elo,
                       s.best_time, s.type ? instrumentation::to_string(*s.type) : "n/a");
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out << fmt::format("  {:<14} loss {:>9.4f}  elo {:>8.1f}  time {:>9.1f}s\n",
                         value_label(s.parameter, s.values[i]), s.losses[i], s.elos[i], s.times[i]);
    }
  }
  for (const std::string& f : summary.failed_runs) out << fmt::format("failed: {}\n", f);
}

}  // namespace azsweep::sweep
