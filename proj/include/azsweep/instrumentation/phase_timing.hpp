#pragma once

// Wall-clock accounting per training iteration, split into the three stages
// of the loop. Durations come from std::chrono::steady_clock.

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <string_view>
#include <vector>

namespace azsweep::instrumentation {

enum class Phase { self_play = 0, train = 1, arena = 2 };

inline constexpr std::array<Phase, 3> kPhases{Phase::self_play, Phase::train, Phase::arena};

std::string_view phase_name(Phase p);
Phase parse_phase(std::string_view name);  // throws ContractViolation on unknown names

struct PhaseCounters {
  std::int64_t episodes = 0;  // self-play episodes or arena games
  std::int64_t plies = 0;
  std::int64_t simulations = 0;
  std::int64_t batches = 0;

  PhaseCounters& operator+=(const PhaseCounters& o) {
    episodes += o.episodes;
    plies += o.plies;
    simulations += o.simulations;
    batches += o.batches;
    return *this;
  }
  friend bool operator==(const PhaseCounters&, const PhaseCounters&) = default;
};

struct PhaseBreakdown {
  int iteration = 0;
  std::array<double, 3> seconds{};
  std::array<PhaseCounters, 3> counters{};
  double total_s = 0.0;

  double phase_seconds(Phase p) const { return seconds[static_cast<std::size_t>(p)]; }
  const PhaseCounters& phase_counters(Phase p) const {
    return counters[static_cast<std::size_t>(p)];
  }
  double phase_sum() const { return seconds[0] + seconds[1] + seconds[2]; }
  PhaseCounters totals() const;
};

// Single-owner accumulator; one row per iteration that has been touched.
class PhaseLedger {
 public:
  void record_phase(int iteration, Phase phase, double duration_s, const PhaseCounters& counters = {});
  void record_phase(int iteration, std::string_view phase, double duration_s,
                    const PhaseCounters& counters = {});
  void set_total(int iteration, double total_s);

  // Zero breakdown for iterations never recorded.
  PhaseBreakdown breakdown(int iteration) const;
  std::vector<PhaseBreakdown> rows() const;  // ascending iteration

 private:
  std::map<int, PhaseBreakdown> rows_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  void restart() { start_ = std::chrono::steady_clock::now(); }
  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// CSV columns: iteration,self_play_s,train_s,arena_s,total_s,plies,simulations,batches
void write_breakdown_csv(std::ostream& out, const std::vector<PhaseBreakdown>& rows);
std::vector<PhaseBreakdown> read_breakdown_csv(std::istream& in);

}  // namespace azsweep::instrumentation
