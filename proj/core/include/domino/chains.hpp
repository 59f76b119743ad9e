#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "domino/board.hpp"
#include "domino/rules.hpp"
#include "domino/tiles.hpp"

namespace domino {

class ChainsError : public std::runtime_error {
 public:
  enum class Code { NoSuchBoard, NotMinimalTranca, Unsupported };
  ChainsError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// A terminal board of a blocked game: both ends carry the block value k, all
// seven k-tiles are down, and every other value occurs an even number of
// times along the chain.
struct BlockedBoard {
  BoardChain chain;
  int k = 0;
  int tile_count = 0;
  int pip_sum = 0;
};

// Template shapes of a 10-tile block at 0, distinguished by where the 0-0
// tile sits (as played, left to right) and whether it was the final play:
//   T1  0-0 leads the chain (and was not the last tile played)
//   T2  0-0 sits after the first zero-free bridge
//   T3  0-0 sits after the second bridge
//   T4  0-0 was the last tile played (at either extremity)
enum class TrancaShape { T1, T2, T3, T4 };

// Emits every blocked chain (up to reversal) with at most max_tiles tiles
// blocked at k, each exactly once.
void enumerate_blocked_boards(int k, int max_tiles,
                              const std::function<void(const BlockedBoard&)>& sink,
                              const Rules& rules = Rules::standard());

// Exact minimum pip sum over blocked boards at k with exactly `tiles` tiles.
// Throws ChainsError::NoSuchBoard when no such board exists.
int min_board_sum(int k, int tiles, const Rules& rules = Rules::standard());

bool is_minimal_tranca(const BoardChain& chain);
// The three zero-free tiles of a minimal block, pairing up {1..6}.
std::array<Tile, 3> connectors(const BoardChain& chain);
TrancaShape classify_shape(const BoardChain& chain, bool double_blank_last);

// Number of ways to lay every tile of the double-max_pip set in a single
// line, counting left-to-right sequences (a chain and its mirror image are
// distinct). Computed as a bitmask DP over trails of the non-double tiles,
// multiplied by an insertion factor for the doubles derived from the trail's
// visit structure; see count_full_chains_brute_force for the direct check.
std::uint64_t count_full_chains(int max_pip = 6);

// Direct enumeration of full-line sequences; practical for max_pip <= 4.
std::uint64_t count_full_chains_brute_force(int max_pip);

// --- building blocks shared with the prover ---

// Emits every tile set that can form a blocked board with ends (end_a, end_b)
// and exactly `tiles` tiles: all end-value tiles included, every other value
// with matching parity. Any emitted set admits at least one chain layout.
void enumerate_blocked_sets(const Rules& rules, int end_a, int end_b, int tiles,
                            const std::function<void(const TileSet&)>& sink);

// Emits each chain layout of `set` with ends (end_a, end_b), up to reversal.
void enumerate_arrangements(const Rules& rules, const TileSet& set, int end_a,
                            int end_b,
                            const std::function<void(const BoardChain&)>& sink);

}  // namespace domino
