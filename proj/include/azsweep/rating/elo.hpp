#pragma once

// Incremental Elo:
//   E_A = 1 / (1 + 10^((R_B - R_A) / 400))
//   R_A <- R_A + K (S_A - E_A)

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace azsweep::rating {

inline constexpr std::string_view kAnchorId = "random";

double expected_score(double r_a, double r_b);

// Requires k >= 0 (k = 0 leaves the rating unchanged).
double update_rating(double r_a, double e_a, double s_a, double k);

// Fixed K, or the two-stage schedule: `early_k` for a player's first
// `early_games` games, `late_k` afterwards.
struct KPolicy {
  double k = 32.0;
  bool two_stage = false;
  double early_k = 40.0;
  int early_games = 30;
  double late_k = 20.0;

  static KPolicy fixed(double k) { return {k}; }
  static KPolicy staged() { return {32.0, true}; }

  double k_for(int games_played) const;
};

struct GameResult {
  std::string player_a;
  std::string player_b;
  double score_a = 0.0;  // 1 win, 0.5 draw, 0 loss
};

struct RatedPlayer {
  std::string id;
  double rating = 0.0;
  int games_played = 0;
  bool anchor = false;
};

// Owns the ratings of one pool. The anchor never moves.
class RatingLedger {
 public:
  explicit RatingLedger(KPolicy policy = {});

  void add_player(const std::string& id, double initial = 0.0, bool anchor = false);
  bool has_player(std::string_view id) const;
  const RatedPlayer& player(std::string_view id) const;

  // Both sides are updated from their pre-game ratings. Throws
  // ContractViolation for unknown ids or a score outside {0, 0.5, 1}.
  void apply(const GameResult& game);

 private:
  KPolicy policy_;
  std::map<std::string, RatedPlayer, std::less<>> players_;
};

// Rates `checkpoints` (all starting at 0) against the log in order; the
// anchor kAnchorId is implicitly present. Returns final ratings in the order
// of `checkpoints`. Unknown ids throw ContractViolation.
std::vector<RatedPlayer> rate_run(std::span<const GameResult> log,
                                  std::span<const std::string> checkpoints,
                                  const KPolicy& policy = {});

struct EloPoint {
  int iteration = 0;
  double rating = 0.0;
};

// "iter_<k>" naming for checkpoints.
std::string checkpoint_id(int iteration);
std::optional<int> parse_checkpoint_id(std::string_view id);

// CSV columns: checkpoint_id,opponent_id,score
void write_game_log(std::ostream& out, std::span<const GameResult> log);
std::vector<GameResult> read_game_log(std::istream& in);

// CSV columns: iteration,rating
void write_elo_curve(std::ostream& out, std::span<const EloPoint> curve);
std::vector<EloPoint> read_elo_curve(std::istream& in);

}  // namespace azsweep::rating
