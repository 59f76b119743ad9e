#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "domino/board.hpp"
#include "domino/rules.hpp"
#include "domino/tiles.hpp"

namespace domino {

class EngineError : public std::runtime_error {
 public:
  enum class Code {
    BadDeal,
    TileNotHeld,
    EndMismatch,
    ForcedPlayViolation,
    GameOver,
    NotBlocked,
  };

  EngineError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct Move {
  enum class Kind { Play, Pass };

  Kind kind = Kind::Pass;
  Tile tile{};
  Side side = Side::Right;

  static Move play(Tile t, Side s) { return {Kind::Play, t, s}; }
  static Move pass() { return {Kind::Pass, Tile{}, Side::Right}; }

  bool is_play() const { return kind == Kind::Play; }
  friend auto operator<=>(const Move&, const Move&) = default;
};

struct Outcome {
  enum class Kind { DominoOut, Blocked, BlockedTie };

  Kind kind = Kind::DominoOut;
  std::optional<int> winner_team;       // none for BlockedTie
  int points = 0;                       // losing side's remaining pips; 0 on tie
  std::optional<int> blocking_number;   // set when both blocked ends agree
  std::pair<int, int> ends{-1, -1};     // blocked ends (left, right)
};

// Immutable value; every operation below is a pure function of its inputs.
struct GameState {
  Rules rules;
  std::vector<TileSet> hands;  // indexed by player-1
  BoardChain board;
  int turn = 1;        // player to move, 1-based
  int pass_streak = 0; // consecutive trailing passes
  std::vector<std::pair<int, Move>> history;

  const TileSet& hand(int player) const { return hands[player - 1]; }
};

// Validates the deal (sizes, disjointness, universe coverage) and seats the
// opener. Throws EngineError::BadDeal.
GameState initial_state(const Rules& rules, const std::vector<TileSet>& hands,
                        int opener);

int tile_pips(Tile t);

// All legal moves for the player to move. Exactly {Pass} when stuck. Throws
// EngineError::GameOver once a player has gone out.
std::vector<Move> legal_moves(const GameState& s);

// Applies one move, returning the successor state. Enforces the forced-play
// rule: passing with a playable tile in hand is rejected. Trailing passes on
// a blocked board are accepted so that recorded games replay verbatim.
GameState apply_move(const GameState& s, const Move& m);

// DominoOut as soon as a hand empties; Blocked as soon as no player holds a
// playable tile; none otherwise.
std::optional<Outcome> is_terminal(const GameState& s);

// The common end value of a blocked board. Throws EngineError::NotBlocked.
int blocking_number(const GameState& s);

int team_pip_sum(const GameState& s, int team);

// Multiset(hands) + multiset(board) == full universe.
bool conservation_holds(const GameState& s);

}  // namespace domino
