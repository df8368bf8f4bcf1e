#include <gtest/gtest.h>

#include <sstream>

#include "azsweep/instrumentation/cost_model.hpp"
#include "azsweep/instrumentation/phase_timing.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::instrumentation {
namespace {

pipeline::ParameterSet reference_ps() {
  pipeline::ParameterSet ps;
  ps.iteration = 1;
  ps.episode = 10;
  ps.mcts_simulations = 25;
  ps.epoch = 10;
  ps.arena_compare = 20;
  ps.retrain_length = 1;
  ps.batch_size = 32;
  return ps;
}

// 640 examples in a one-list window at batch size 32 -> 20 batches.
constexpr Calibration kReference{0.001, 0.005, 30.0, 640.0};

TEST(PhaseLedger, AccumulatesPerPhase) {
  PhaseLedger ledger;
  ledger.record_phase(1, "self_play", 1.0);
  ledger.record_phase(1, Phase::self_play, 1.0, {2, 10, 100, 0});
  EXPECT_DOUBLE_EQ(ledger.breakdown(1).phase_seconds(Phase::self_play), 2.0);
  EXPECT_EQ(ledger.breakdown(1).phase_counters(Phase::self_play).simulations, 100);
  EXPECT_DOUBLE_EQ(ledger.breakdown(1).phase_seconds(Phase::train), 0.0);
}

TEST(PhaseLedger, EmptyAndMultipleIterations) {
  PhaseLedger ledger;
  const PhaseBreakdown zero = ledger.breakdown(4);
  EXPECT_EQ(zero.phase_sum(), 0.0);
  EXPECT_TRUE(ledger.rows().empty());
  for (int it : {3, 1, 2}) ledger.record_phase(it, Phase::arena, 0.5);
  const auto rows = ledger.rows();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].iteration, 1);
  EXPECT_EQ(rows[2].iteration, 3);
  EXPECT_THROW(ledger.record_phase(1, "warmup", 1.0), ContractViolation);
  EXPECT_THROW(ledger.record_phase(1, Phase::train, -1.0), ContractViolation);
}

TEST(PhaseLedger, CsvRoundTrip) {
  PhaseLedger ledger;
  ledger.record_phase(1, Phase::self_play, 1.25, {1, 30, 750, 0});
  ledger.record_phase(1, Phase::train, 0.5, {0, 0, 0, 12});
  ledger.set_total(1, 1.8);
  std::stringstream s;
  write_breakdown_csv(s, ledger.rows());
  const auto back = read_breakdown_csv(s);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_NEAR(back[0].phase_seconds(Phase::self_play), 1.25, 1e-6);
  EXPECT_NEAR(back[0].total_s, 1.8, 1e-6);
  EXPECT_EQ(back[0].totals().simulations, 750);
  EXPECT_EQ(back[0].totals().batches, 12);
}

TEST(CostModel, ReferencePrediction) {
  const TimePrediction p = predict_time_breakdown(reference_ps(), kReference);
  EXPECT_NEAR(p.self_play_s, 7.5, 1e-9);
  EXPECT_NEAR(p.train_s, 1.0, 1e-9);
  EXPECT_NEAR(p.arena_s, 15.0, 1e-9);
  EXPECT_NEAR(predict_time(reference_ps(), kReference), 23.5, 1e-9);
}

TEST(CostModel, EpisodeOnlyScalesSelfPlay) {
  pipeline::ParameterSet ps = reference_ps();
  const TimePrediction base = predict_time_breakdown(ps, kReference);
  ps.episode *= 2;
  const TimePrediction doubled = predict_time_breakdown(ps, kReference);
  EXPECT_NEAR(doubled.self_play_s, 2.0 * base.self_play_s, 1e-12);
  EXPECT_EQ(doubled.train_s, base.train_s);
  EXPECT_EQ(doubled.arena_s, base.arena_s);
  ps.arena_compare = 0;
  EXPECT_EQ(predict_time_breakdown(ps, kReference).arena_s, 0.0);
}

TEST(CostModel, MonotoneInWorkParameters) {
  const double base = predict_time(reference_ps(), kReference);
  for (const char* key : {"iteration", "episode", "mctssimu", "epoch", "arenacompare"}) {
    pipeline::ParameterSet ps = reference_ps();
    pipeline::set_parameter(ps, key, pipeline::get_parameter(ps, key) * 2);
    EXPECT_GT(predict_time(ps, kReference), base) << key;
  }
  pipeline::ParameterSet ps = reference_ps();
  ps.batch_size = 64;
  EXPECT_LT(predict_time(ps, kReference), base);
}

TEST(CostModel, WindowCapsAtIterationCount) {
  pipeline::ParameterSet ps = reference_ps();
  ps.iteration = 2;
  ps.retrain_length = 20;
  const TimePrediction p = predict_time_breakdown(ps, kReference);
  // min(20, 2) lists of 640 examples -> 40 batches per epoch.
  EXPECT_NEAR(p.train_s, 2 * 10 * 40 * 0.005, 1e-12);
}

TEST(CostModel, RejectsNonPositiveCalibration) {
  Calibration c = kReference;
  c.t_sim_s = 0.0;
  EXPECT_THROW(predict_time(reference_ps(), c), ContractViolation);
}

TEST(CostModel, CalibrateFromBreakdowns) {
  PhaseBreakdown row;
  row.seconds = {2.0, 1.0, 2.0};
  row.counters[0] = {10, 300, 2000, 0};
  row.counters[1] = {0, 0, 0, 50};
  row.counters[2] = {10, 300, 3000, 0};
  const std::vector<PhaseBreakdown> rows{row, row};
  const Calibration c = calibrate(rows, 300.0);
  EXPECT_NEAR(c.t_sim_s, 4.0 / 5000.0, 1e-15);
  EXPECT_NEAR(c.t_batch_s, 1.0 / 50.0, 1e-15);
  EXPECT_NEAR(c.avg_plies, 30.0, 1e-12);
  EXPECT_EQ(c.avg_examples_per_iter, 300.0);
  EXPECT_THROW(calibrate(std::vector<PhaseBreakdown>{}, 1.0), ContractViolation);
}

TEST(Classify, Thresholds) {
  EXPECT_EQ(classify("x", {1.0, 1.0, 1.25}), TimeSensitivity::time_friendly);
  EXPECT_EQ(classify("x", {1.0, 1.0, 1.26}), TimeSensitivity::time_sensitive);
  EXPECT_EQ(classify("x", {2.0, 1.0, 1.0}), TimeSensitivity::time_sensitive);
  EXPECT_THROW(classify("x", {0.0, 1.0, 1.0}), ContractViolation);
  EXPECT_EQ(to_string(TimeSensitivity::time_friendly), "time-friendly");
}

TEST(Classify, ReferenceTableReproduced) {
  const auto& rows = reference_time_costs();
  ASSERT_EQ(rows.size(), 12u);
  int matches = 0;
  for (const TimeCostRow& r : rows) {
    const TimeSensitivity got = classify(r.parameter, r.hours);
    EXPECT_EQ(got, r.reported) << r.parameter;
    matches += got == r.reported;
  }
  EXPECT_EQ(matches, 12);
}

}  // namespace
}  // namespace azsweep::instrumentation
