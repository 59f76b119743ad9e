#include "domino/records.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace domino {

namespace {

using json = nlohmann::ordered_json;

std::vector<Tile> parse_hand(const json& arr, int max_pip) {
  if (!arr.is_array())
    throw RecordError(RecordError::Code::Syntax, "hand must be an array");
  std::vector<Tile> tiles;
  for (const auto& item : arr) {
    if (!item.is_string())
      throw RecordError(RecordError::Code::Syntax, "tile must be a string");
    try {
      tiles.push_back(tile_from_string(item.get<std::string>(), max_pip));
    } catch (const std::invalid_argument& e) {
      throw RecordError(RecordError::Code::InvalidPip, e.what());
    }
  }
  return tiles;
}

}  // namespace

GameRecord parse_record(const std::string& text, const Rules& rules) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RecordError(RecordError::Code::Syntax, e.what());
  }
  if (!doc.is_object())
    throw RecordError(RecordError::Code::Syntax, "document must be an object");

  GameRecord rec;
  rec.name = doc.value("name", "");
  rec.note = doc.value("note", "");
  if (!doc.contains("opener") || !doc["opener"].is_number_integer())
    throw RecordError(RecordError::Code::Syntax, "missing integer 'opener'");
  rec.opener = doc["opener"].get<int>();
  if (rec.opener < 1 || rec.opener > rules.num_players)
    throw RecordError(RecordError::Code::UnknownPlayer,
                      "opener out of range: " + std::to_string(rec.opener));

  if (!doc.contains("hands") || !doc["hands"].is_object())
    throw RecordError(RecordError::Code::Syntax, "missing 'hands' object");
  const json& hands = doc["hands"];
  for (auto it = hands.begin(); it != hands.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() < 2 || key[0] != 'p')
      throw RecordError(RecordError::Code::UnknownPlayer,
                        "bad hand key '" + key + "'");
    int p = 0;
    try {
      p = std::stoi(key.substr(1));
    } catch (const std::exception&) {
      throw RecordError(RecordError::Code::UnknownPlayer,
                        "bad hand key '" + key + "'");
    }
    if (p < 1 || p > rules.num_players)
      throw RecordError(RecordError::Code::UnknownPlayer,
                        "unknown player '" + key + "'");
  }
  rec.hands.resize(rules.num_players);
  std::set<Tile> seen;
  for (int p = 1; p <= rules.num_players; ++p) {
    std::string key = "p" + std::to_string(p);
    if (!hands.contains(key))
      throw RecordError(RecordError::Code::Syntax, "missing hand '" + key + "'");
    rec.hands[p - 1] = parse_hand(hands[key], rules.max_pip);
    if (static_cast<int>(rec.hands[p - 1].size()) != rules.hand_size)
      throw RecordError(RecordError::Code::HandSize,
                        "hand '" + key + "' has " +
                            std::to_string(rec.hands[p - 1].size()) +
                            " tiles, expected " +
                            std::to_string(rules.hand_size));
    for (Tile t : rec.hands[p - 1]) {
      if (!seen.insert(t).second)
        throw RecordError(RecordError::Code::DuplicateTile,
                          "tile " + to_string(t) + " dealt twice");
    }
  }

  if (!doc.contains("moves") || !doc["moves"].is_array())
    throw RecordError(RecordError::Code::Syntax, "missing 'moves' array");
  int expected = rec.opener;
  int index = 0;
  for (const auto& m : doc["moves"]) {
    if (!m.is_object() || !m.contains("player") ||
        !m["player"].is_number_integer())
      throw RecordError(RecordError::Code::Syntax,
                        "move " + std::to_string(index) + " malformed");
    int player = m["player"].get<int>();
    if (player < 1 || player > rules.num_players)
      throw RecordError(RecordError::Code::UnknownPlayer,
                        "move " + std::to_string(index) + ": unknown player");
    if (player != expected)
      throw RecordError(RecordError::Code::RotationOrder,
                        "move " + std::to_string(index) + ": player " +
                            std::to_string(player) + " out of rotation",
                        index);
    if (m.contains("play")) {
      Tile t;
      try {
        t = tile_from_string(m["play"].get<std::string>(), rules.max_pip);
      } catch (const std::invalid_argument& e) {
        throw RecordError(RecordError::Code::InvalidPip, e.what(), index);
      }
      std::optional<Side> side;
      if (m.contains("side")) {
        std::string s = m["side"].get<std::string>();
        if (s == "L")
          side = Side::Left;
        else if (s == "R")
          side = Side::Right;
        else
          throw RecordError(RecordError::Code::Syntax,
                            "side must be \"L\" or \"R\"", index);
      }
      rec.moves.push_back(MoveSpec::play(player, t, side));
    } else if (m.contains("pass") && m["pass"].is_boolean() &&
               m["pass"].get<bool>()) {
      std::optional<std::vector<int>> ends;
      if (m.contains("ends")) {
        if (!m["ends"].is_array())
          throw RecordError(RecordError::Code::Syntax, "'ends' must be array",
                            index);
        std::vector<int> vals;
        for (const auto& v : m["ends"]) vals.push_back(v.get<int>());
        ends = std::move(vals);
      }
      rec.moves.push_back(MoveSpec::pass(player, std::move(ends)));
    } else {
      throw RecordError(RecordError::Code::Syntax,
                        "move " + std::to_string(index) +
                            " must have 'play' or 'pass'",
                        index);
    }
    expected = rules.next_player(expected);
    ++index;
  }
  return rec;
}

std::string serialize_record(const GameRecord& rec) {
  json doc;
  doc["name"] = rec.name;
  if (!rec.note.empty()) doc["note"] = rec.note;
  doc["opener"] = rec.opener;
  json hands = json::object();
  for (std::size_t p = 0; p < rec.hands.size(); ++p) {
    json arr = json::array();
    for (Tile t : rec.hands[p]) arr.push_back(to_string(t));
    hands["p" + std::to_string(p + 1)] = std::move(arr);
  }
  doc["hands"] = std::move(hands);
  json moves = json::array();
  for (const MoveSpec& m : rec.moves) {
    json jm;
    jm["player"] = m.player;
    if (m.is_pass) {
      jm["pass"] = true;
      if (m.pass_ends) jm["ends"] = *m.pass_ends;
    } else {
      jm["play"] = to_string(m.tile);
      if (m.side) jm["side"] = (*m.side == Side::Left) ? "L" : "R";
    }
    moves.push_back(std::move(jm));
  }
  doc["moves"] = std::move(moves);
  return doc.dump(2) + "\n";
}

GameRecord load_record_file(const std::string& path, const Rules& rules) {
  std::ifstream in(path);
  if (!in)
    throw RecordError(RecordError::Code::Syntax, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_record(buf.str(), rules);
}

namespace {

struct ReplayCtx {
  ReplayCtx(const GameRecord& rec, const Rules& rules, bool require_terminal,
            std::function<void(const ReplayResult&)> sink)
      : rec(rec), rules(rules), require_terminal(require_terminal),
        sink(std::move(sink)) {}

  const GameRecord& rec;
  const Rules& rules;
  bool require_terminal;
  std::function<void(const ReplayResult&)> sink;
  bool stop_at_first = false;
  bool found = false;
  // Deepest failure, for error reporting.
  int fail_depth = -1;
  RecordError::Code fail_code = RecordError::Code::IllegalMove;
  std::string fail_what;
  bool had_unspecified_side = false;

  void record_failure(int depth, RecordError::Code code,
                      const std::string& what) {
    if (depth > fail_depth) {
      fail_depth = depth;
      fail_code = code;
      fail_what = what;
    }
  }

  bool run(const GameState& s, std::size_t i, std::vector<MoveSpec>& resolved) {
    if (i == rec.moves.size()) {
      auto outcome = is_terminal(s);
      if (require_terminal && !outcome) {
        record_failure(static_cast<int>(i), RecordError::Code::NonTerminal,
                       "record ends in a non-terminal position");
        return false;
      }
      ReplayResult result;
      result.final_state = s;
      if (outcome) result.outcome = *outcome;
      result.resolved = rec;
      result.resolved.moves = resolved;
      found = true;
      if (sink) sink(result);
      return stop_at_first;
    }
    const MoveSpec& spec = rec.moves[i];
    if (spec.is_pass) {
      if (spec.pass_ends && !s.board.empty()) {
        std::set<int> want(spec.pass_ends->begin(), spec.pass_ends->end());
        std::set<int> got{s.board.left_end(), s.board.right_end()};
        if (want != got) {
          record_failure(static_cast<int>(i),
                         RecordError::Code::PassAnnotationMismatch,
                         "pass annotation does not match board ends at move " +
                             std::to_string(i));
          return false;
        }
      }
      try {
        GameState next = apply_move(s, Move::pass());
        resolved.push_back(spec);
        bool done = run(next, i + 1, resolved);
        resolved.pop_back();
        return done;
      } catch (const EngineError& e) {
        record_failure(static_cast<int>(i), RecordError::Code::IllegalMove,
                       std::string(e.what()) + " at move " + std::to_string(i));
        return false;
      }
    }
    std::vector<Side> sides;
    if (spec.side)
      sides = {*spec.side};
    else {
      had_unspecified_side = true;
      sides = {Side::Left, Side::Right};
    }
    if (s.board.empty()) sides = {Side::Right};  // opening placement
    bool done = false;
    for (Side side : sides) {
      try {
        GameState next = apply_move(s, Move::play(spec.tile, side));
        MoveSpec r = spec;
        r.side = side;
        resolved.push_back(r);
        done = run(next, i + 1, resolved);
        resolved.pop_back();
        if (done) break;
      } catch (const EngineError& e) {
        record_failure(static_cast<int>(i), RecordError::Code::IllegalMove,
                       std::string(e.what()) + " at move " + std::to_string(i));
      }
    }
    return done;
  }
};

std::vector<TileSet> deal_to_sets(const GameRecord& rec, const Rules& rules) {
  std::vector<TileSet> hands;
  for (const auto& h : rec.hands) {
    TileSet set(rules.max_pip);
    for (Tile t : h) set.insert(t);
    hands.push_back(set);
  }
  return hands;
}

}  // namespace

ReplayResult replay(const GameRecord& rec, const Rules& rules,
                    bool require_terminal) {
  GameState start = initial_state(rules, deal_to_sets(rec, rules), rec.opener);
  ReplayResult result;
  ReplayCtx ctx{rec, rules, require_terminal,
                [&result](const ReplayResult& r) { result = r; }};
  ctx.stop_at_first = true;
  std::vector<MoveSpec> resolved;
  ctx.run(start, 0, resolved);
  if (!ctx.found) {
    if (ctx.had_unspecified_side &&
        ctx.fail_code == RecordError::Code::IllegalMove)
      throw RecordError(RecordError::Code::NoConsistentSides,
                        "no side assignment makes every move legal (deepest: " +
                            ctx.fail_what + ")",
                        ctx.fail_depth);
    throw RecordError(ctx.fail_code, ctx.fail_what, ctx.fail_depth);
  }
  return result;
}

void for_each_replay(const GameRecord& rec, const Rules& rules,
                     const std::function<void(const ReplayResult&)>& sink) {
  GameState start = initial_state(rules, deal_to_sets(rec, rules), rec.opener);
  ReplayCtx ctx{rec, rules, true, sink};
  std::vector<MoveSpec> resolved;
  ctx.run(start, 0, resolved);
}

GameRecord record_from_game([[maybe_unused]] const Rules& rules,
                            const std::vector<TileSet>& initial_hands,
                            int opener,
                            const std::vector<std::pair<int, Move>>& history,
                            const std::string& name, const std::string& note) {
  GameRecord rec;
  rec.name = name;
  rec.note = note;
  rec.opener = opener;
  for (const auto& h : initial_hands) {
    auto tiles = h.tiles();
    std::sort(tiles.begin(), tiles.end());
    rec.hands.push_back(std::move(tiles));
  }
  for (const auto& [player, move] : history) {
    if (move.is_play())
      rec.moves.push_back(MoveSpec::play(player, move.tile, move.side));
    else
      rec.moves.push_back(MoveSpec::pass(player));
  }
  return rec;
}

}  // namespace domino
