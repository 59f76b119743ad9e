#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "domino/rules.hpp"
#include "domino/tiles.hpp"

namespace domino {

// Sum of pips over the whole tile set, by summation (168 for double-six).
int total_pips(const Rules& rules = Rules::standard());

// True when some full hand avoids every value in `values`. With four or more
// values this is always false on the double-six set: only six tiles exist
// over the remaining three values. Accepts 1..max_pip values.
bool exists_hand_avoiding(const std::vector<int>& values,
                          const Rules& rules = Rules::standard());

struct Residual {
  int sum = 0;
  std::vector<Tile> witness;
};

// Minimum pip sum over `count`-tile selections disjoint from `excluded`,
// with one witness selection. Throws std::invalid_argument when fewer than
// `count` tiles remain.
Residual lowest_residual(const TileSet& excluded, int count);

// Maximum pip sum over `count`-tile selections from the full set.
int top_hand_sum(int count, const Rules& rules = Rules::standard());

// One row of the per-block-value score bound table for 10-tile boards.
struct BoundRow {
  int k = 0;
  int min_board_sum = 0;       // 6k + 42, confirmed by enumeration
  int min_winner_residual = 0; // cheapest 5 tiles the winners can retain
  int max_possible = 0;        // 168 - board - residual
  std::vector<Tile> witness_low_tiles;
};

// Rows for k = 0..6. The residual minimizes over all 15 pairings of the
// non-k values for the three bridge tiles; every quantity is computed by
// exact enumeration.
std::array<BoundRow, 7> bound_table();

// Enumerates the perfect matchings of `values` (|values| even).
void for_each_perfect_matching(
    const std::vector<int>& values,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& sink);

}  // namespace domino
