#pragma once

// Square-board Othello (reversi) for the even sizes 4, 6 and 8.
//
// Cells are indexed row-major, index = row * size + col. The policy vector has
// size*size + 1 entries; the last one is "pass". A pass is the only legal move
// when the player to move has no flanking placement. The game ends after two
// consecutive passes or when the board is full; the side with more discs wins.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace azsweep::othello {

enum class Player : std::uint8_t { black, white };

constexpr Player opponent(Player p) {
  return p == Player::black ? Player::white : Player::black;
}

enum class Cell : std::uint8_t { empty, black, white };

constexpr Cell cell_of(Player p) {
  return p == Player::black ? Cell::black : Cell::white;
}

struct MoveId {
  int index = 0;

  friend auto operator<=>(const MoveId&, const MoveId&) = default;
};

constexpr MoveId pass_move(int board_size) { return MoveId{board_size * board_size}; }
constexpr int action_count(int board_size) { return board_size * board_size + 1; }

// Outcome for a stated perspective: +1 win, -1 loss, 0 draw.
enum class Outcome : int { loss = -1, draw = 0, win = 1 };

constexpr Outcome flip(Outcome o) { return static_cast<Outcome>(-static_cast<int>(o)); }
constexpr double as_value(Outcome o) { return static_cast<double>(static_cast<int>(o)); }

class GameState {
 public:
  // Standard start: white on the main diagonal of the central 2x2, black on
  // the anti-diagonal, black to move.
  static GameState initial(int board_size);

  // Builds an arbitrary position (used by fixtures and tests).
  static GameState from_cells(int board_size, std::span<const Cell> cells, Player to_move,
                              int consecutive_passes = 0);

  int size() const { return size_; }
  int cell_count() const { return size_ * size_; }
  Player to_move() const { return to_move_; }
  int consecutive_passes() const { return passes_; }

  Cell at(int index) const;
  Cell at(int row, int col) const { return at(row * size_ + col); }
  int count(Player p) const;
  int disc_count() const { return count(Player::black) + count(Player::white); }

  std::uint64_t bits(Player p) const { return p == Player::black ? black_ : white_; }

  bool is_terminal() const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  GameState(int size, std::uint64_t black, std::uint64_t white, Player to_move, int passes)
      : size_(size), black_(black), white_(white), to_move_(to_move), passes_(passes) {}

  friend GameState apply_move(const GameState&, MoveId);

  int size_ = 0;
  std::uint64_t black_ = 0;
  std::uint64_t white_ = 0;
  Player to_move_ = Player::black;
  int passes_ = 0;
};

std::vector<MoveId> legal_moves(const GameState& state);
bool has_placement(const GameState& state, Player p);

// Throws IllegalMove for anything not in legal_moves(state) and
// ContractViolation when the state is already terminal.
GameState apply_move(const GameState& state, MoveId move);

// Discs that a placement at `index` by the player to move would flip.
std::uint64_t flips_for(const GameState& state, int index);

std::optional<Outcome> terminal_value(const GameState& state, Player perspective);

// Canonical network input: channel 0 holds the discs of the player to move,
// channel 1 the opponent's, each as size*size row-major 0/1 entries.
inline constexpr int kEncodingChannels = 2;
std::vector<float> encode(const GameState& state);
constexpr std::size_t encoding_size(int board_size) {
  return static_cast<std::size_t>(kEncodingChannels * board_size * board_size);
}

GameState swap_colors(const GameState& state);

// Dihedral group of the square: rotations by k*90 degrees, optionally
// preceded by a transpose. Index 0 is the identity.
struct Symmetry {
  int rotations = 0;  // 0..3, counter-clockwise
  bool transpose = false;

  int map_cell(int index, int board_size) const;
  friend bool operator==(const Symmetry&, const Symmetry&) = default;
};

std::array<Symmetry, 8> all_symmetries();

GameState transform(const GameState& state, const Symmetry& sym);
std::vector<double> transform_policy(std::span<const double> policy, int board_size,
                                     const Symmetry& sym);

struct PolicyPair {
  GameState state;
  std::vector<double> policy;
};

std::vector<PolicyPair> symmetries(const GameState& state, std::span<const double> policy);

// Plain-text boards: `size` rows of `.`, `B`, `W`, then "to-move: B" or "to-move: W".
// An optional trailing "passes: k" line restores consecutive_passes.
GameState parse_board(const std::string& text);
std::string format_board(const GameState& state);

std::string move_name(MoveId move, int board_size);  // "c4", "pass"
std::optional<MoveId> parse_move_name(const std::string& text, int board_size);

}  // namespace azsweep::othello
