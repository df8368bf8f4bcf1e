#include "azsweep/instrumentation/phase_timing.hpp"

#include <sstream>
#include <string>

#include <fmt/format.h>

#include "azsweep/util/csv.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::instrumentation {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::self_play: return "self_play";
    case Phase::train: return "train";
    case Phase::arena: return "arena";
  }
  return "?";
}

Phase parse_phase(std::string_view name) {
  for (Phase p : kPhases) {
    if (phase_name(p) == name) return p;
  }
  throw ContractViolation(fmt::format("unknown phase '{}'", name));
}

PhaseCounters PhaseBreakdown::totals() const {
  PhaseCounters out;
  for (const auto& c : counters) out += c;
  return out;
}

void PhaseLedger::record_phase(int iteration, Phase phase, double duration_s,
                               const PhaseCounters& counters) {
  if (duration_s < 0.0) throw ContractViolation("negative phase duration");
  PhaseBreakdown& row = rows_[iteration];
  row.iteration = iteration;
  row.seconds[static_cast<std::size_t>(phase)] += duration_s;
  row.counters[static_cast<std::size_t>(phase)] += counters;
}

void PhaseLedger::record_phase(int iteration, std::string_view phase, double duration_s,
                               const PhaseCounters& counters) {
  record_phase(iteration, parse_phase(phase), duration_s, counters);
}

void PhaseLedger::set_total(int iteration, double total_s) {
  PhaseBreakdown& row = rows_[iteration];
  row.iteration = iteration;
  row.total_s = total_s;
}

PhaseBreakdown PhaseLedger::breakdown(int iteration) const {
  if (auto it = rows_.find(iteration); it != rows_.end()) return it->second;
  PhaseBreakdown zero;
  zero.iteration = iteration;
  return zero;
}

std::vector<PhaseBreakdown> PhaseLedger::rows() const {
  std::vector<PhaseBreakdown> out;
  out.reserve(rows_.size());
  for (const auto& [_, row] : rows_) out.push_back(row);
  return out;
}

void write_breakdown_csv(std::ostream& out, const std::vector<PhaseBreakdown>& rows) {
  out << "iteration,self_play_s,train_s,arena_s,total_s,plies,simulations,batches\n";
  for (const PhaseBreakdown& r : rows) {
    const PhaseCounters t = r.totals();
    out << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{}\n", r.iteration,
                       r.phase_seconds(Phase::self_play), r.phase_seconds(Phase::train),
                       r.phase_seconds(Phase::arena), r.total_s, t.plies, t.simulations, t.batches);
  }
}

std::vector<PhaseBreakdown> read_breakdown_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  table.require_columns({"iteration", "self_play_s", "train_s", "arena_s", "total_s", "plies",
                         "simulations", "batches"});
  std::vector<PhaseBreakdown> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    PhaseBreakdown b;
    b.iteration = static_cast<int>(table.get_int(r, "iteration"));
    b.seconds[0] = table.get_double(r, "self_play_s");
    b.seconds[1] = table.get_double(r, "train_s");
    b.seconds[2] = table.get_double(r, "arena_s");
    b.total_s = table.get_double(r, "total_s");
    // Per-phase split of the counters is not kept in the CSV; totals land on self_play.
    b.counters[0].plies = table.get_int(r, "plies");
    b.counters[0].simulations = table.get_int(r, "simulations");
    b.counters[1].batches = table.get_int(r, "batches");
    out.push_back(b);
  }
  return out;
}

}  // namespace azsweep::instrumentation
