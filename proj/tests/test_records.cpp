#include "domino/records.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "domino/game.hpp"
#include "support.hpp"

using namespace domino;
using test_support::corpus_path;

TEST_CASE("parsing the corpus deals") {
  auto rec = load_record_file(corpus_path("inmortal.json"));
  CHECK(rec.name == "inmortal");
  CHECK(rec.opener == 1);
  REQUIRE(rec.hands.size() == 4);
  std::set<Tile> p1(rec.hands[0].begin(), rec.hands[0].end());
  CHECK(p1.count(Tile(1, 1)) == 1);
  CHECK(p1.count(Tile(4, 0)) == 1);
  CHECK(p1.count(Tile(0, 6)) == 1);
  CHECK(rec.moves.size() == 25);
}

TEST_CASE("parse errors carry their cause") {
  auto expect_code = [](const std::string& text, RecordError::Code code) {
    try {
      parse_record(text);
      FAIL("expected a parse error");
    } catch (const RecordError& e) {
      CHECK(e.code() == code);
    }
  };

  expect_code("{", RecordError::Code::Syntax);
  expect_code(R"({"opener":1,"hands":{"p1":["7-1","0-0","0-1","0-2","0-3","0-4","0-5"],
    "p2":["1-1","1-2","1-3","1-4","1-5","1-6","2-2"],
    "p3":["2-3","2-4","2-5","2-6","3-3","3-4","3-5"],
    "p4":["3-6","4-4","4-5","4-6","5-5","5-6","6-6"]},"moves":[]})",
              RecordError::Code::InvalidPip);
  expect_code(R"({"opener":1,"hands":{"p1":["3-3","0-0","0-1","0-2","0-3","0-4","0-5"],
    "p2":["3-3","1-2","1-3","1-4","1-5","1-6","2-2"],
    "p3":["2-3","2-4","2-5","2-6","1-1","3-4","3-5"],
    "p4":["3-6","4-4","4-5","4-6","5-5","5-6","6-6"]},"moves":[]})",
              RecordError::Code::DuplicateTile);
  expect_code(R"({"opener":1,"hands":{"p1":["0-0","0-1","0-2","0-3","0-4","0-5"],
    "p2":["1-1","1-2","1-3","1-4","1-5","1-6","2-2"],
    "p3":["2-3","2-4","2-5","2-6","3-3","3-4","3-5"],
    "p4":["0-6","4-4","4-5","4-6","5-5","5-6","6-6"]},"moves":[]})",
              RecordError::Code::HandSize);
  expect_code(R"({"opener":5,"hands":{},"moves":[]})",
              RecordError::Code::UnknownPlayer);
  expect_code(R"({"opener":1,"hands":{"p1":["0-0","0-1","0-2","0-3","0-4","0-5","0-6"],
    "p2":["1-1","1-2","1-3","1-4","1-5","1-6","2-2"],
    "p3":["2-3","2-4","2-5","2-6","3-3","3-4","3-5"],
    "p4":["3-6","4-4","4-5","4-6","5-5","5-6","6-6"]},
    "moves":[{"player":3,"play":"0-0"}]})",
              RecordError::Code::RotationOrder);
}

TEST_CASE("replay of the corpus games reproduces the published outcomes") {
  SUBCASE("immortal: 111-point domino out for players 1 and 3") {
    auto rr = replay(load_record_file(corpus_path("inmortal.json")));
    CHECK(rr.outcome.kind == Outcome::Kind::DominoOut);
    CHECK(rr.outcome.winner_team == 0);
    CHECK(rr.outcome.points == 111);
    // final holdings, exactly as published
    CHECK(rr.final_state.hand(1).empty());
    CHECK(rr.final_state.hand(2) ==
          test_support::make_hand(
              {"5-5", "5-6", "4-5", "3-5", "3-6", "3-4", "3-3"}));
    CHECK(rr.final_state.hand(3) ==
          test_support::make_hand({"2-3", "2-2", "1-2"}));
    CHECK(rr.final_state.hand(4) ==
          test_support::make_hand({"2-4", "4-4", "4-6", "2-6", "1-6", "6-6"}));
  }
  SUBCASE("ten-tile blocked game: board of 10 tiles summing 42") {
    auto rr = replay(load_record_file(corpus_path("tranca_minima.json")));
    CHECK(rr.outcome.kind == Outcome::Kind::Blocked);
    CHECK(rr.outcome.blocking_number == 0);
    CHECK(rr.final_state.board.size() == 10);
    CHECK(rr.final_state.board.pip_sum() == 42);
  }
  SUBCASE("107-point blocked game") {
    auto rr = replay(load_record_file(corpus_path("tranca_107.json")));
    CHECK(rr.outcome.kind == Outcome::Kind::Blocked);
    CHECK(rr.outcome.blocking_number == 0);
    CHECK(rr.outcome.winner_team == 0);
    CHECK(rr.outcome.points == 107);
  }
}

TEST_CASE("outcome quantities agree across every consistent side assignment") {
  for (const char* name :
       {"inmortal.json", "tranca_minima.json", "tranca_107.json"}) {
    auto rec = load_record_file(corpus_path(name));
    std::set<std::tuple<int, int, int>> outcomes;  // kind, winner, points
    int assignments = 0;
    for_each_replay(rec, Rules::standard(), [&](const ReplayResult& rr) {
      ++assignments;
      outcomes.insert({static_cast<int>(rr.outcome.kind),
                       rr.outcome.winner_team.value_or(-1),
                       rr.outcome.points});
    });
    CAPTURE(name);
    CHECK(assignments >= 1);
    CHECK(outcomes.size() == 1);
  }
}

TEST_CASE("pass annotations are checked against the live ends") {
  auto rec = load_record_file(corpus_path("tranca_107.json"));
  // corrupt one annotation
  for (auto& m : rec.moves)
    if (m.is_pass && m.pass_ends && m.pass_ends->size() == 2) {
      (*m.pass_ends)[0] = 6;
      break;
    }
  CHECK_THROWS_AS(replay(rec), RecordError);
}

TEST_CASE("illegal records are rejected with context") {
  auto rec = load_record_file(corpus_path("inmortal.json"));
  SUBCASE("forced-play violation") {
    // player 3's first move becomes a pass although 0-1 is playable
    rec.moves[2] = MoveSpec::pass(3);
    CHECK_THROWS_AS(replay(rec), RecordError);
  }
  SUBCASE("non-terminal record") {
    rec.moves.pop_back();
    try {
      replay(rec);
      FAIL("expected an error");
    } catch (const RecordError& e) {
      CHECK(e.code() == RecordError::Code::NonTerminal);
    }
  }
}

TEST_CASE("no consistent side assignment is reported as such") {
  // Board [1|3][3|2] exposes ends (1,2) without 1-2 being down, so playing
  // 1-2 genuinely forks: left makes the ends (2,2), right makes them (1,1).
  // Player 4 holds both a 1-tile and a 2-tile, so their recorded pass is
  // illegal either way.
  GameRecord rec;
  rec.opener = 1;
  rec.hands = {
      {Tile(1, 3), Tile(0, 0), Tile(0, 1), Tile(0, 2), Tile(0, 3), Tile(0, 4),
       Tile(0, 5)},
      {Tile(2, 3), Tile(1, 1), Tile(3, 3), Tile(4, 4), Tile(5, 5), Tile(6, 6),
       Tile(0, 6)},
      {Tile(1, 2), Tile(1, 4), Tile(1, 6), Tile(2, 2), Tile(2, 4), Tile(2, 5),
       Tile(3, 4)},
      {Tile(1, 5), Tile(2, 6), Tile(3, 5), Tile(3, 6), Tile(4, 5), Tile(4, 6),
       Tile(5, 6)}};
  rec.moves = {MoveSpec::play(1, Tile(1, 3)), MoveSpec::play(2, Tile(2, 3)),
               MoveSpec::play(3, Tile(1, 2)), MoveSpec::pass(4)};
  try {
    replay(rec);
    FAIL("expected an error");
  } catch (const RecordError& e) {
    CHECK(e.code() == RecordError::Code::NoConsistentSides);
  }
}

TEST_CASE("serialize round-trips") {
  SUBCASE("corpus files") {
    for (const char* name :
         {"inmortal.json", "tranca_minima.json", "tranca_107.json"}) {
      auto rec = load_record_file(corpus_path(name));
      auto back = parse_record(serialize_record(rec));
      CHECK(back == rec);
      // and byte-stable on a second pass
      CHECK(serialize_record(back) == serialize_record(rec));
    }
  }
  SUBCASE("empty move table") {
    GameRecord rec = load_record_file(corpus_path("inmortal.json"));
    rec.moves.clear();
    auto back = parse_record(serialize_record(rec));
    CHECK(back == rec);
  }
  SUBCASE("serialized immortal still replays to 111") {
    auto rec = load_record_file(corpus_path("inmortal.json"));
    auto rr = replay(parse_record(serialize_record(rec)));
    CHECK(rr.outcome.points == 111);
  }
}

TEST_CASE("generated records from random playouts round-trip and replay") {
  std::mt19937_64 rng(7);
  auto universe = all_tiles(6);
  int checked = 0;
  for (int g = 0; g < 100; ++g) {
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<TileSet> hands(4, TileSet(6));
    for (int p = 0; p < 4; ++p)
      for (int i = 0; i < 7; ++i) hands[p].insert(universe[p * 7 + i]);
    GameState s = initial_state(Rules::standard(), hands, 1);
    while (!is_terminal(s)) {
      auto moves = legal_moves(s);
      s = apply_move(s, moves[rng() % moves.size()]);
    }
    GameRecord rec = record_from_game(Rules::standard(), hands, 1, s.history,
                                      "playout-" + std::to_string(g));
    auto back = parse_record(serialize_record(rec));
    CHECK(back == rec);
    auto rr = replay(back);
    CHECK(rr.outcome.points == is_terminal(s)->points);
    ++checked;
  }
  CHECK(checked == 100);
}
