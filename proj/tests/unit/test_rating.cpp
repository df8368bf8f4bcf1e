#include <gtest/gtest.h>

#include <sstream>

#include "azsweep/rating/elo.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::rating {
namespace {

TEST(Elo, ExpectedScoreReferenceValues) {
  EXPECT_NEAR(expected_score(1200, 1200), 0.5, 1e-12);
  EXPECT_NEAR(expected_score(0, 400), 1.0 / 11.0, 1e-12);
  EXPECT_NEAR(expected_score(400, 0), 10.0 / 11.0, 1e-12);
}

TEST(Elo, ExpectedScoresSumToOne) {
  for (double a : {-800.0, -3.5, 0.0, 120.0, 2500.0}) {
    for (double b : {-100.0, 0.0, 77.7, 1900.0}) {
      EXPECT_NEAR(expected_score(a, b) + expected_score(b, a), 1.0, 1e-12);
    }
  }
}

TEST(Elo, UpdateReferenceValues) {
  EXPECT_NEAR(update_rating(1000, 0.5, 1.0, 32), 1016.0, 1e-12);
  EXPECT_EQ(update_rating(1234.5, 0.3, 0.3, 32), 1234.5);
  EXPECT_NEAR(update_rating(0, 1.0 / 11.0, 0.0, 32), -32.0 / 11.0, 1e-12);
  EXPECT_EQ(update_rating(50, 0.9, 0.0, 0), 50);
  // Affine in the score.
  const double lo = update_rating(10, 0.4, 0.0, 20);
  const double hi = update_rating(10, 0.4, 1.0, 20);
  EXPECT_NEAR(update_rating(10, 0.4, 0.5, 20), 0.5 * (lo + hi), 1e-12);
  EXPECT_THROW(update_rating(0, 0.5, 1, -1), ContractViolation);
}

TEST(Elo, StagedKPolicy) {
  const KPolicy k = KPolicy::staged();
  EXPECT_EQ(k.k_for(0), 40);
  EXPECT_EQ(k.k_for(29), 40);
  EXPECT_EQ(k.k_for(30), 20);
  EXPECT_EQ(KPolicy{}.k_for(100), 32);
}

TEST(RateRun, EmptyLogKeepsInitialRatings) {
  const std::vector<std::string> ids{"iter_0", "iter_3"};
  const auto rated = rate_run({}, ids);
  ASSERT_EQ(rated.size(), 2u);
  for (const auto& p : rated) EXPECT_EQ(p.rating, 0.0);
}

TEST(RateRun, WinningEveryAnchorGameRaisesRatingStrictly) {
  RatingLedger ledger;
  ledger.add_player("random", 0.0, true);
  ledger.add_player("iter_1");
  double last = 0.0;
  for (int g = 0; g < 20; ++g) {
    ledger.apply({"iter_1", "random", 1.0});
    const double r = ledger.player("iter_1").rating;
    EXPECT_GT(r, last);
    last = r;
    EXPECT_EQ(ledger.player("random").rating, 0.0);  // anchor stays fixed
  }
  EXPECT_EQ(ledger.player("iter_1").games_played, 20);
}

TEST(RateRun, SymmetricResultsGiveEqualRatings) {
  const std::vector<double> scores{1, 0.5, 0, 1, 1, 0, 0.5, 1};
  std::vector<GameResult> log;
  for (double s : scores) {
    log.push_back({"iter_1", "random", s});
    log.push_back({"iter_2", "random", s});
  }
  // Head-to-head games split evenly and mirrored.
  log.push_back({"iter_1", "iter_2", 0.5});
  log.push_back({"iter_2", "iter_1", 0.5});
  const std::vector<std::string> ids{"iter_1", "iter_2"};
  const auto rated = rate_run(log, ids);
  EXPECT_EQ(rated[0].rating, rated[1].rating);
}

TEST(RateRun, OrderSensitive) {
  const std::vector<GameResult> forward{{"iter_1", "random", 1.0}, {"iter_1", "random", 0.0}};
  const std::vector<GameResult> reversed{forward[1], forward[0]};
  const std::vector<std::string> ids{"iter_1"};
  const double a = rate_run(forward, ids)[0].rating;
  const double b = rate_run(reversed, ids)[0].rating;
  EXPECT_NE(a, b);
  EXPECT_EQ(a, rate_run(forward, ids)[0].rating);  // deterministic
}

TEST(RateRun, BothNonAnchorPlayersMove) {
  const std::vector<GameResult> log{{"iter_1", "iter_2", 1.0}};
  const std::vector<std::string> ids{"iter_1", "iter_2"};
  const auto rated = rate_run(log, ids);
  EXPECT_NEAR(rated[0].rating, 16.0, 1e-12);
  EXPECT_NEAR(rated[1].rating, -16.0, 1e-12);
}

TEST(RateRun, Errors) {
  const std::vector<std::string> ids{"iter_1"};
  const std::vector<GameResult> unknown{{"iter_1", "iter_9", 1.0}};
  EXPECT_THROW(rate_run(unknown, ids), ContractViolation);
  const std::vector<GameResult> self{{"iter_1", "iter_1", 1.0}};
  EXPECT_THROW(rate_run(self, ids), ContractViolation);
  const std::vector<GameResult> bad_score{{"iter_1", "random", 0.7}};
  EXPECT_THROW(rate_run(bad_score, ids), ContractViolation);
  RatingLedger ledger;
  ledger.add_player("x");
  EXPECT_THROW(ledger.add_player("x"), ContractViolation);
  EXPECT_THROW(ledger.player("y"), ContractViolation);
}

TEST(RateRun, CheckpointIds) {
  EXPECT_EQ(checkpoint_id(12), "iter_12");
  EXPECT_EQ(parse_checkpoint_id("iter_12"), 12);
  EXPECT_FALSE(parse_checkpoint_id("random").has_value());
  EXPECT_FALSE(parse_checkpoint_id("iter_x").has_value());
}

TEST(RateRun, CsvRoundTrip) {
  const std::vector<GameResult> log{{"iter_1", "random", 1.0}, {"iter_2", "iter_1", 0.5}};
  std::stringstream s;
  write_game_log(s, log);
  const auto back = read_game_log(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].player_a, "iter_2");
  EXPECT_EQ(back[1].score_a, 0.5);

  const std::vector<EloPoint> curve{{0, 0.0}, {4, 123.456789012345678}};
  std::stringstream c;
  write_elo_curve(c, curve);
  const auto curve_back = read_elo_curve(c);
  ASSERT_EQ(curve_back.size(), 2u);
  EXPECT_EQ(curve_back[1].rating, curve[1].rating);
  EXPECT_EQ(curve_back[1].iteration, 4);
}

}  // namespace
}  // namespace azsweep::rating
