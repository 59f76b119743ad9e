#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "domino/board.hpp"
#include "domino/rules.hpp"

namespace domino {

// Results of exhaustively playing out every deal of a reduced two-player
// configuration through the public engine interface. Serves as the
// independent reference the prover is checked against.
struct ReducedCensus {
  int max_winning_score = 0;  // over blocked finals; ties score nothing
  std::uint64_t blocked_config_count = 0;
  std::uint64_t terminal_positions = 0;  // all endings, for curiosity
  std::uint64_t invariant_violations = 0;
  std::set<std::string> blocked_configs;  // canonical chain + retained hands
};

// Enumerates every ordered deal with player 1 opening, walks every legal move
// sequence, and checks the engine invariants (conservation, chain matching,
// forced-pass soundness, end parity) along the way.
ReducedCensus exhaustive_blocked_census(const Rules& rules);

// Canonical key for a blocked final position: minimal chain orientation plus
// each player's retained tiles. Shared by the oracle and the prover's census
// so their counts are comparable.
std::string blocked_config_key(const BoardChain& chain,
                               const std::vector<TileSet>& kept);

struct PlayoutStats {
  std::uint64_t games = 0;
  std::uint64_t moves = 0;
  std::uint64_t blocked = 0;
  std::uint64_t domino_out = 0;
  std::uint64_t ties = 0;
  std::uint64_t violations = 0;
};

// Random legal playouts from uniformly shuffled deals; asserts the same
// invariants as the census. Deterministic for a fixed seed.
PlayoutStats run_random_playouts(const Rules& rules, std::uint64_t games,
                                 std::uint64_t seed);

}  // namespace domino
