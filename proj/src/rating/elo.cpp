#include "azsweep/rating/elo.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "azsweep/util/csv.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::rating {

double expected_score(double r_a, double r_b) {
  return 1.0 / (1.0 + std::pow(10.0, (r_b - r_a) / 400.0));
}

double update_rating(double r_a, double e_a, double s_a, double k) {
  if (k < 0.0) throw ContractViolation("K must be non-negative");
  return r_a + k * (s_a - e_a);
}

double KPolicy::k_for(int games_played) const {
  if (!two_stage) return k;
  return games_played < early_games ? early_k : late_k;
}

RatingLedger::RatingLedger(KPolicy policy) : policy_(policy) {}

void RatingLedger::add_player(const std::string& id, double initial, bool anchor) {
  if (players_.contains(id)) throw ContractViolation(fmt::format("duplicate player '{}'", id));
  players_.emplace(id, RatedPlayer{id, initial, 0, anchor});
}

bool RatingLedger::has_player(std::string_view id) const { return players_.contains(id); }

const RatedPlayer& RatingLedger::player(std::string_view id) const {
  auto it = players_.find(id);
  if (it == players_.end()) throw ContractViolation(fmt::format("unknown player '{}'", id));
  return it->second;
}

void RatingLedger::apply(const GameResult& game) {
  auto a = players_.find(game.player_a);
  auto b = players_.find(game.player_b);
  if (a == players_.end()) throw ContractViolation(fmt::format("unknown player '{}'", game.player_a));
  if (b == players_.end()) throw ContractViolation(fmt::format("unknown player '{}'", game.player_b));
  if (a == b) throw ContractViolation(fmt::format("'{}' cannot play itself", game.player_a));
  if (game.score_a != 0.0 && game.score_a != 0.5 && game.score_a != 1.0) {
    throw ContractViolation(fmt::format("score {} is not 0, 0.5 or 1", game.score_a));
  }
  RatedPlayer& pa = a->second;
  RatedPlayer& pb = b->second;
  const double ea = expected_score(pa.rating, pb.rating);
  const double eb = expected_score(pb.rating, pa.rating);
  const double ra = update_rating(pa.rating, ea, game.score_a, policy_.k_for(pa.games_played));
  const double rb = update_rating(pb.rating, eb, 1.0 - game.score_a, policy_.k_for(pb.games_played));
  if (!pa.anchor) pa.rating = ra;
  if (!pb.anchor) pb.rating = rb;
  ++pa.games_played;
  ++pb.games_played;
}

std::vector<RatedPlayer> rate_run(std::span<const GameResult> log,
                                  std::span<const std::string> checkpoints,
                                  const KPolicy& policy) {
  RatingLedger ledger(policy);
  ledger.add_player(std::string(kAnchorId), 0.0, true);
  for (const std::string& id : checkpoints) ledger.add_player(id);
  for (const GameResult& g : log) ledger.apply(g);
  std::vector<RatedPlayer> out;
  out.reserve(checkpoints.size());
  for (const std::string& id : checkpoints) out.push_back(ledger.player(id));
  return out;
}

std::string checkpoint_id(int iteration) { return fmt::format("iter_{}", iteration); }

std::optional<int> parse_checkpoint_id(std::string_view id) {
  constexpr std::string_view prefix = "iter_";
  if (!id.starts_with(prefix)) return std::nullopt;
  id.remove_prefix(prefix.size());
  int value = 0;
  auto [p, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (ec != std::errc{} || p != id.data() + id.size() || value < 0) return std::nullopt;
  return value;
}

void write_game_log(std::ostream& out, std::span<const GameResult> log) {
  out << "checkpoint_id,opponent_id,score\n";
  for (const GameResult& g : log) {
    out << fmt::format("{},{},{}\n", csv_escape(g.player_a), csv_escape(g.player_b), g.score_a);
  }
}

std::vector<GameResult> read_game_log(std::istream& in) {
  const CsvTable t = read_csv(in);
  t.require_columns({"checkpoint_id", "opponent_id", "score"});
  std::vector<GameResult> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back({t.get(r, "checkpoint_id"), t.get(r, "opponent_id"), t.get_double(r, "score")});
  }
  return out;
}

void write_elo_curve(std::ostream& out, std::span<const EloPoint> curve) {
  out << "iteration,rating\n";
  for (const EloPoint& p : curve) out << fmt::format("{},{:.17g}\n", p.iteration, p.rating);
}

std::vector<EloPoint> read_elo_curve(std::istream& in) {
  const CsvTable t = read_csv(in);
  t.require_columns({"iteration", "rating"});
  std::vector<EloPoint> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back({static_cast<int>(t.get_int(r, "iteration")), t.get_double(r, "rating")});
  }
  return out;
}

}  // namespace azsweep::rating
