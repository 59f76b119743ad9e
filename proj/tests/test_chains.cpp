#include "domino/chains.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "domino/game.hpp"
#include "domino/records.hpp"
#include "support.hpp"

using namespace domino;
using test_support::corpus_path;

TEST_CASE("no blocked board has fewer than ten tiles") {
  for (int k = 0; k <= 6; ++k) {
    int count = 0;
    enumerate_blocked_boards(k, 9, [&](const BlockedBoard&) { ++count; });
    CHECK(count == 0);
  }
}

TEST_CASE("ten-tile boards: minimum pip sums") {
  SUBCASE("k=0 minimum is 42") {
    int best = -1;
    enumerate_blocked_boards(0, 10, [&](const BlockedBoard& b) {
      CHECK(b.tile_count == 10);
      if (best < 0 || b.pip_sum < best) best = b.pip_sum;
    });
    CHECK(best == 42);
  }
  SUBCASE("k=3 minimum is 60") {
    int best = -1;
    enumerate_blocked_boards(3, 10, [&](const BlockedBoard& b) {
      if (best < 0 || b.pip_sum < best) best = b.pip_sum;
    });
    CHECK(best == 60);
  }
  SUBCASE("min_board_sum follows 6k+42 for every k") {
    for (int k = 0; k <= 6; ++k) CHECK(min_board_sum(k, 10) == 6 * k + 42);
  }
}

TEST_CASE("min_board_sum: larger boards and error cases") {
  // independent subset oracle: scan all zero-free five-tile complements
  // with odd per-value parity and take the cheapest
  auto oracle_12 = [] {
    int best = -1;
    enumerate_blocked_sets(Rules::standard(), 0, 0, 12,
                           [&](const TileSet& set) {
                             int s = set.pip_sum();
                             if (best < 0 || s < best) best = s;
                           });
    return best;
  }();
  CHECK(min_board_sum(0, 12) == oracle_12);
  CHECK(min_board_sum(0, 12) == 46);
  CHECK_THROWS_AS(min_board_sum(0, 9), ChainsError);
}

TEST_CASE("enumeration is duplicate-free and reversal-canonical") {
  std::set<std::string> seen;
  int count = 0;
  enumerate_blocked_boards(0, 10, [&](const BlockedBoard& b) {
    ++count;
    CHECK(seen.insert(b.chain.to_string()).second);
    // the mirror image must not appear separately
    if (!(b.chain == b.chain.reversed()))
      CHECK(seen.count(b.chain.reversed().to_string()) == 0);
    // structural invariants
    CHECK(b.chain.left_end() == 0);
    CHECK(b.chain.right_end() == 0);
    TileSet tiles(6);
    for (Tile t : b.chain.tiles()) tiles.insert(t);
    CHECK((tiles & tiles_with_value(0, 6)).count() == 7);
  });
  // 15 bridge pairings x 96 layouts each
  CHECK(count == 1440);
}

TEST_CASE("every enumerated board blocks the game whoever holds the rest") {
  int sampled = 0;
  enumerate_blocked_boards(0, 10, [&](const BlockedBoard& b) {
    if (++sampled % 97 != 0) return;  // sample the stream
    // hand the remaining tiles around arbitrarily and confirm the block
    TileSet board_tiles(6);
    for (Tile t : b.chain.tiles()) board_tiles.insert(t);
    auto rest = board_tiles.complement().tiles();
    GameState s;
    s.rules = Rules::standard();
    s.board = b.chain;
    s.hands.assign(4, TileSet(6));
    for (std::size_t i = 0; i < rest.size(); ++i)
      s.hands[i % 4].insert(rest[i]);
    s.turn = 1;
    auto o = is_terminal(s);
    REQUIRE(o);
    CHECK((o->kind == Outcome::Kind::Blocked ||
           o->kind == Outcome::Kind::BlockedTie));
    CHECK(o->ends.first == o->ends.second);
    CHECK(o->blocking_number == b.k);
  });
  CHECK(sampled == 1440);
}

TEST_CASE("minimal block structure: bridges pair up 1..6") {
  auto rr = replay(load_record_file(corpus_path("tranca_minima.json")));
  const BoardChain& chain = rr.final_state.board;
  REQUIRE(is_minimal_tranca(chain));
  auto conn = connectors(chain);
  std::set<int> values;
  for (Tile t : conn) {
    CHECK(!t.has(0));
    values.insert(t.lo);
    values.insert(t.hi);
  }
  CHECK(values == std::set<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("shape classification") {
  auto rr = replay(load_record_file(corpus_path("tranca_minima.json")));
  const BoardChain& chain = rr.final_state.board;
  bool last_was_blank =
      rr.final_state.history.back().second.tile == Tile(0, 0);
  CHECK(classify_shape(chain, last_was_blank) == TrancaShape::T1);

  SUBCASE("0-0 played last is the closing template") {
    CHECK(classify_shape(chain, true) == TrancaShape::T4);
  }
  SUBCASE("interior positions") {
    BoardChain t2;
    for (const char* t : {"0-1", "1-2", "0-2", "0-0", "0-3", "3-4", "0-4",
                          "0-5", "5-6", "0-6"})
      t2.append(tile_from_string(t), Side::Right);
    CHECK(classify_shape(t2, false) == TrancaShape::T2);
    BoardChain t3;
    for (const char* t : {"0-1", "1-2", "0-2", "0-3", "3-4", "0-4", "0-0",
                          "0-5", "5-6", "0-6"})
      t3.append(tile_from_string(t), Side::Right);
    CHECK(classify_shape(t3, false) == TrancaShape::T3);
  }
  SUBCASE("a chain missing a 0-tile is rejected") {
    BoardChain bad;
    for (const char* t : {"1-1", "1-2", "2-2"})
      bad.append(tile_from_string(t), Side::Right);
    CHECK_THROWS_AS(classify_shape(bad, false), ChainsError);
  }
}

TEST_CASE("full-line counts on reduced sets match direct enumeration") {
  SUBCASE("double-2: both routes give 12") {
    CHECK(count_full_chains_brute_force(2) == 12);
    CHECK(count_full_chains(2) == 12);
  }
  SUBCASE("double-3: no full line exists") {
    CHECK(count_full_chains_brute_force(3) == 0);
    CHECK(count_full_chains(3) == 0);
  }
  SUBCASE("double-4: decomposition equals brute force") {
    CHECK(count_full_chains(4) == count_full_chains_brute_force(4));
  }
  SUBCASE("double-0 and double-1 edge cases") {
    CHECK(count_full_chains(0) == 1);
    CHECK(count_full_chains(1) == count_full_chains_brute_force(1));
    CHECK(count_full_chains(1) == 2);
  }
  SUBCASE("double-5: six odd-degree values, so no full line") {
    CHECK(count_full_chains(5) == 0);
  }
}

TEST_CASE("the double-six line count" * doctest::timeout(300)) {
  CHECK(count_full_chains(6) == 7959229931520ull);
}
