#include "azsweep/game/othello.hpp"

#include <bit>
#include <sstream>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"

namespace azsweep::othello {
namespace {

constexpr std::array<std::array<int, 2>, 8> kDirections{{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

std::uint64_t bit(int index) { return std::uint64_t{1} << index; }

std::uint64_t full_mask(int size) {
  const int n = size * size;
  return n == 64 ? ~std::uint64_t{0} : (bit(n) - 1);
}

void check_size(int size) {
  if (size < 4 || size > 8 || size % 2 != 0) {
    throw ContractViolation(fmt::format("unsupported board size {}", size));
  }
}

std::uint64_t flips_in(int size, std::uint64_t own, std::uint64_t opp, int index) {
  const int row = index / size;
  const int col = index % size;
  std::uint64_t flips = 0;
  for (const auto& [dr, dc] : kDirections) {
    std::uint64_t run = 0;
    int r = row + dr;
    int c = col + dc;
    while (r >= 0 && r < size && c >= 0 && c < size && (opp & bit(r * size + c))) {
      run |= bit(r * size + c);
      r += dr;
      c += dc;
    }
    if (run != 0 && r >= 0 && r < size && c >= 0 && c < size && (own & bit(r * size + c))) {
      flips |= run;
    }
  }
  return flips;
}

bool any_placement(int size, std::uint64_t own, std::uint64_t opp) {
  const std::uint64_t empty = full_mask(size) & ~(own | opp);
  for (int i = 0; i < size * size; ++i) {
    if ((empty & bit(i)) && flips_in(size, own, opp, i) != 0) return true;
  }
  return false;
}

}  // namespace

GameState GameState::initial(int board_size) {
  check_size(board_size);
  const int lo = board_size / 2 - 1;
  const int hi = board_size / 2;
  const std::uint64_t white = bit(lo * board_size + lo) | bit(hi * board_size + hi);
  const std::uint64_t black = bit(lo * board_size + hi) | bit(hi * board_size + lo);
  return GameState(board_size, black, white, Player::black, 0);
}

GameState GameState::from_cells(int board_size, std::span<const Cell> cells, Player to_move,
                                int consecutive_passes) {
  check_size(board_size);
  if (cells.size() != static_cast<std::size_t>(board_size * board_size)) {
    throw ContractViolation(
        fmt::format("expected {} cells, got {}", board_size * board_size, cells.size()));
  }
  if (consecutive_passes < 0 || consecutive_passes > 2) {
    throw ContractViolation("consecutive_passes must lie in [0, 2]");
  }
  std::uint64_t black = 0;
  std::uint64_t white = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == Cell::black) black |= bit(static_cast<int>(i));
    if (cells[i] == Cell::white) white |= bit(static_cast<int>(i));
  }
  return GameState(board_size, black, white, to_move, consecutive_passes);
}

Cell GameState::at(int index) const {
  if (black_ & bit(index)) return Cell::black;
  if (white_ & bit(index)) return Cell::white;
  return Cell::empty;
}

int GameState::count(Player p) const { return std::popcount(bits(p)); }

bool GameState::is_terminal() const {
  return passes_ >= 2 || (black_ | white_) == full_mask(size_);
}

bool has_placement(const GameState& state, Player p) {
  return any_placement(state.size(), state.bits(p), state.bits(opponent(p)));
}

std::uint64_t flips_for(const GameState& state, int index) {
  const Player me = state.to_move();
  if (state.at(index) != Cell::empty) return 0;
  return flips_in(state.size(), state.bits(me), state.bits(opponent(me)), index);
}

std::vector<MoveId> legal_moves(const GameState& state) {
  if (state.is_terminal()) {
    throw ContractViolation("legal_moves called on a terminal state");
  }
  std::vector<MoveId> moves;
  for (int i = 0; i < state.cell_count(); ++i) {
    if (flips_for(state, i) != 0) moves.push_back(MoveId{i});
  }
  if (moves.empty()) moves.push_back(pass_move(state.size()));
  return moves;
}

GameState apply_move(const GameState& state, MoveId move) {
  if (state.is_terminal()) {
    throw ContractViolation("apply_move called on a terminal state");
  }
  const int n = state.cell_count();
  const Player me = state.to_move();
  if (move.index == n) {
    if (has_placement(state, me)) {
      throw IllegalMove("pass is illegal while a flanking placement exists");
    }
    return GameState(state.size(), state.black_, state.white_, opponent(me), state.passes_ + 1);
  }
  if (move.index < 0 || move.index > n) {
    throw IllegalMove(fmt::format("move index {} out of range", move.index));
  }
  const std::uint64_t flips = flips_for(state, move.index);
  if (flips == 0) {
    throw IllegalMove(
        fmt::format("move {} flanks nothing", move_name(move, state.size())));
  }
  std::uint64_t own = state.bits(me) | flips | bit(move.index);
  std::uint64_t opp = state.bits(opponent(me)) & ~flips;
  const std::uint64_t black = me == Player::black ? own : opp;
  const std::uint64_t white = me == Player::black ? opp : own;
  return GameState(state.size(), black, white, opponent(me), 0);
}

std::optional<Outcome> terminal_value(const GameState& state, Player perspective) {
  if (!state.is_terminal()) return std::nullopt;
  const int mine = state.count(perspective);
  const int theirs = state.count(opponent(perspective));
  if (mine > theirs) return Outcome::win;
  if (mine < theirs) return Outcome::loss;
  return Outcome::draw;
}

std::vector<float> encode(const GameState& state) {
  const int n = state.cell_count();
  std::vector<float> out(static_cast<std::size_t>(kEncodingChannels * n), 0.0f);
  const std::uint64_t own = state.bits(state.to_move());
  const std::uint64_t opp = state.bits(opponent(state.to_move()));
  for (int i = 0; i < n; ++i) {
    if (own & bit(i)) out[static_cast<std::size_t>(i)] = 1.0f;
    if (opp & bit(i)) out[static_cast<std::size_t>(n + i)] = 1.0f;
  }
  return out;
}

GameState swap_colors(const GameState& state) {
  std::vector<Cell> cells(static_cast<std::size_t>(state.cell_count()));
  for (int i = 0; i < state.cell_count(); ++i) {
    const Cell c = state.at(i);
    cells[static_cast<std::size_t>(i)] =
        c == Cell::black ? Cell::white : (c == Cell::white ? Cell::black : Cell::empty);
  }
  return GameState::from_cells(state.size(), cells, opponent(state.to_move()),
                               state.consecutive_passes());
}

int Symmetry::map_cell(int index, int board_size) const {
  int r = index / board_size;
  int c = index % board_size;
  if (transpose) std::swap(r, c);
  for (int k = 0; k < rotations; ++k) {
    const int nr = board_size - 1 - c;
    const int nc = r;
    r = nr;
    c = nc;
  }
  return r * board_size + c;
}

std::array<Symmetry, 8> all_symmetries() {
  std::array<Symmetry, 8> out{};
  for (int t = 0; t < 2; ++t) {
    for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(t * 4 + k)] = Symmetry{k, t == 1};
  }
  return out;
}

GameState transform(const GameState& state, const Symmetry& sym) {
  std::vector<Cell> cells(static_cast<std::size_t>(state.cell_count()), Cell::empty);
  for (int i = 0; i < state.cell_count(); ++i) {
    cells[static_cast<std::size_t>(sym.map_cell(i, state.size()))] = state.at(i);
  }
  return GameState::from_cells(state.size(), cells, state.to_move(), state.consecutive_passes());
}

std::vector<double> transform_policy(std::span<const double> policy, int board_size,
                                     const Symmetry& sym) {
  const int n = board_size * board_size;
  if (policy.size() != static_cast<std::size_t>(n + 1)) {
    throw ContractViolation(fmt::format("policy length {} != {}", policy.size(), n + 1));
  }
  std::vector<double> out(policy.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(sym.map_cell(i, board_size))] = policy[static_cast<std::size_t>(i)];
  }
  out[static_cast<std::size_t>(n)] = policy[static_cast<std::size_t>(n)];
  return out;
}

std::vector<PolicyPair> symmetries(const GameState& state, std::span<const double> policy) {
  std::vector<PolicyPair> out;
  out.reserve(8);
  for (const Symmetry& s : all_symmetries()) {
    out.push_back({transform(state, s), transform_policy(policy, state.size(), s)});
  }
  return out;
}

GameState parse_board(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> rows;
  std::string line;
  std::optional<Player> to_move;
  int passes = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("to-move:", 0) == 0) {
      const auto value = line.substr(line.find_first_not_of(' ', 8));
      if (value == "B") {
        to_move = Player::black;
      } else if (value == "W") {
        to_move = Player::white;
      } else {
        throw FormatError(fmt::format("bad to-move value '{}'", value));
      }
      continue;
    }
    if (line.rfind("passes:", 0) == 0) {
      try {
        passes = std::stoi(line.substr(7));
      } catch (const std::exception&) {
        throw FormatError(fmt::format("bad passes line '{}'", line));
      }
      continue;
    }
    if (to_move) throw FormatError("board rows after the to-move line");
    rows.push_back(line);
  }
  if (!to_move) throw FormatError("missing 'to-move:' line");
  const int size = static_cast<int>(rows.size());
  if (size < 4 || size > 8 || size % 2 != 0) {
    throw FormatError(fmt::format("unsupported board size {}", size));
  }
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(size * size));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != size) {
      throw FormatError(fmt::format("row '{}' has {} cells, expected {}", row, row.size(), size));
    }
    for (char ch : row) {
      switch (ch) {
        case '.': cells.push_back(Cell::empty); break;
        case 'B': cells.push_back(Cell::black); break;
        case 'W': cells.push_back(Cell::white); break;
        default: throw FormatError(fmt::format("bad cell character '{}'", ch));
      }
    }
  }
  if (passes < 0 || passes > 2) throw FormatError("passes must lie in [0, 2]");
  return GameState::from_cells(size, cells, *to_move, passes);
}

std::string format_board(const GameState& state) {
  std::string out;
  for (int r = 0; r < state.size(); ++r) {
    for (int c = 0; c < state.size(); ++c) {
      switch (state.at(r, c)) {
        case Cell::empty: out += '.'; break;
        case Cell::black: out += 'B'; break;
        case Cell::white: out += 'W'; break;
      }
    }
    out += '\n';
  }
  out += state.to_move() == Player::black ? "to-move: B\n" : "to-move: W\n";
  if (state.consecutive_passes() != 0) {
    out += fmt::format("passes: {}\n", state.consecutive_passes());
  }
  return out;
}

std::string move_name(MoveId move, int board_size) {
  if (move.index == board_size * board_size) return "pass";
  const int row = move.index / board_size;
  const int col = move.index % board_size;
  return fmt::format("{}{}", static_cast<char>('a' + col), row + 1);
}

std::optional<MoveId> parse_move_name(const std::string& text, int board_size) {
  if (text == "pass") return pass_move(board_size);
  if (text.size() < 2) return std::nullopt;
  const int col = text[0] - 'a';
  int row = 0;
  try {
    std::size_t used = 0;
    row = std::stoi(text.substr(1), &used) - 1;
    if (used + 1 != text.size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (col < 0 || col >= board_size || row < 0 || row >= board_size) return std::nullopt;
  return MoveId{row * board_size + col};
}

}  // namespace azsweep::othello
