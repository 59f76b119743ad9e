#pragma once

#include "domino/tiles.hpp"

namespace domino {

// Game configuration. The default is the four-player partnership game on the
// double-six set: two teams, players 1 and 3 against players 2 and 4, seven
// tiles each, the whole universe dealt out.
//
// Reduced two-player configurations over double-n sets are used by the
// brute-force oracle and the prover's cross-validation paths.
struct Rules {
  int max_pip = 6;
  int num_players = 4;
  int num_teams = 2;
  int hand_size = 7;
  // When true, the opening move must be the highest double. Off by default;
  // the standard records and the search both allow any opening tile.
  bool highest_double_opens = false;

  static constexpr Rules standard() { return Rules{}; }

  static constexpr Rules reduced_two_player(int max_pip) {
    return Rules{max_pip, 2, 2, domino::tile_count(max_pip) / 2, false};
  }

  constexpr int tile_count() const { return domino::tile_count(max_pip); }
  constexpr int players_per_team() const { return num_players / num_teams; }

  // Players are 1-based. Team 0 ("A") holds players 1,3; team 1 ("B") 2,4.
  constexpr int team_of(int player) const { return (player - 1) % num_teams; }
  constexpr int next_player(int player) const {
    return player % num_players + 1;
  }

  constexpr bool deal_covers_universe() const {
    return num_players * hand_size == tile_count();
  }

  int total_pips() const {
    int s = 0;
    for (int lo = 0; lo <= max_pip; ++lo)
      for (int hi = lo; hi <= max_pip; ++hi) s += lo + hi;
    return s;
  }
};

inline const char* team_name(int team) { return team == 0 ? "A" : "B"; }

}  // namespace domino
