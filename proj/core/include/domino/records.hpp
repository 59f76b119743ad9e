#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "domino/game.hpp"

namespace domino {

class RecordError : public std::runtime_error {
 public:
  enum class Code {
    Syntax,
    InvalidPip,
    DuplicateTile,
    HandSize,
    UnknownPlayer,
    RotationOrder,
    IllegalMove,
    PassAnnotationMismatch,
    NoConsistentSides,
    NonTerminal,
  };

  RecordError(Code code, const std::string& what, int turn_index = -1)
      : std::runtime_error(what), code_(code), turn_index_(turn_index) {}
  Code code() const { return code_; }
  int turn_index() const { return turn_index_; }

 private:
  Code code_;
  int turn_index_;
};

// One table cell: either a played tile (side optional; published tables
// usually omit it) or a pass, optionally annotated with the end values the
// player was stuck on.
struct MoveSpec {
  int player = 1;
  bool is_pass = false;
  Tile tile{};
  std::optional<Side> side;
  std::optional<std::vector<int>> pass_ends;

  static MoveSpec play(int player, Tile t,
                       std::optional<Side> side = std::nullopt) {
    MoveSpec m;
    m.player = player;
    m.tile = t;
    m.side = side;
    return m;
  }
  static MoveSpec pass(int player,
                       std::optional<std::vector<int>> ends = std::nullopt) {
    MoveSpec m;
    m.player = player;
    m.is_pass = true;
    m.pass_ends = std::move(ends);
    return m;
  }

  bool operator==(const MoveSpec&) const = default;
};

// A full game document: the deal plus the move table in rotation order.
struct GameRecord {
  std::string name;
  std::string note;
  int opener = 1;
  std::vector<std::vector<Tile>> hands;  // indexed by player-1
  std::vector<MoveSpec> moves;

  bool operator==(const GameRecord&) const = default;
};

// JSON document layout:
//   {"name": ..., "note": ..., "opener": 1,
//    "hands": {"p1": ["1-1", ...], ...},
//    "moves": [{"player":1,"play":"1-1","side":"L"}, {"player":2,"pass":true,
//               "ends":[0,4]}, ...]}
GameRecord parse_record(const std::string& text,
                        const Rules& rules = Rules::standard());
std::string serialize_record(const GameRecord& rec);

GameRecord load_record_file(const std::string& path,
                            const Rules& rules = Rules::standard());

struct ReplayResult {
  GameState final_state;
  Outcome outcome;
  GameRecord resolved;  // sides filled in for every play
};

// Replays the record, backtracking over unspecified sides in L-before-R order
// and accepting the first assignment under which every move is legal. Pass
// annotations are checked against the live board ends. The record must end in
// a terminal position unless require_terminal is false.
ReplayResult replay(const GameRecord& rec, const Rules& rules = Rules::standard(),
                    bool require_terminal = true);

// Invokes the sink for every consistent side assignment (used to check that
// outcome quantities do not depend on the reconstruction).
void for_each_replay(const GameRecord& rec, const Rules& rules,
                     const std::function<void(const ReplayResult&)>& sink);

// Builds a record from a finished game's history.
GameRecord record_from_game(const Rules& rules,
                            const std::vector<TileSet>& initial_hands,
                            int opener,
                            const std::vector<std::pair<int, Move>>& history,
                            const std::string& name = "",
                            const std::string& note = "");

}  // namespace domino
