#include "domino/oracle.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "domino/board.hpp"
#include "domino/game.hpp"

namespace domino {

std::string blocked_config_key(const BoardChain& chain,
                               const std::vector<TileSet>& kept) {
  std::string key = chain.canonical().to_string();
  for (const auto& h : kept) {
    key += "|";
    for (Tile t : h.tiles()) key += to_string(t) + ",";
  }
  return key;
}

namespace {

// Invariants every reachable state must satisfy.
bool state_invariants_ok(const GameState& s) {
  if (!conservation_holds(s)) return false;
  const auto& placed = s.board.placed();
  for (std::size_t i = 0; i + 1 < placed.size(); ++i)
    if (placed[i].right != placed[i + 1].left) return false;
  return true;
}

// In a blocked position the end pips agree exactly when every pip value has
// even multiplicity over the whole set (n+2 per value on a double-n set).
bool blocked_end_parity_ok(const GameState& s, const Outcome& o) {
  bool even_multiplicity = (s.rules.max_pip + 2) % 2 == 0;
  bool ends_equal = o.ends.first == o.ends.second;
  return even_multiplicity == ends_equal;
}

struct CensusWalker {
  const Rules& rules;
  ReducedCensus& out;

  void walk(const GameState& s) {
    if (!state_invariants_ok(s)) {
      ++out.invariant_violations;
      return;
    }
    if (auto o = is_terminal(s)) {
      ++out.terminal_positions;
      if (o->kind != Outcome::Kind::DominoOut) {
        if (!blocked_end_parity_ok(s, *o)) ++out.invariant_violations;
        if (out.blocked_configs.insert(blocked_config_key(s.board, s.hands))
                .second)
          ++out.blocked_config_count;
        if (o->kind == Outcome::Kind::Blocked)
          out.max_winning_score = std::max(out.max_winning_score, o->points);
      }
      return;
    }
    for (const Move& m : legal_moves(s)) walk(apply_move(s, m));
  }
};

}  // namespace

ReducedCensus exhaustive_blocked_census(const Rules& rules) {
  ReducedCensus out;
  const int n = rules.tile_count();
  const int h = rules.hand_size;

  // every ordered deal: player 1's hand as an h-subset, player 2 the rest
  std::vector<int> pick(h);
  for (int i = 0; i < h; ++i) pick[i] = i;
  while (true) {
    TileSet hand1(rules.max_pip), hand2(rules.max_pip);
    std::uint32_t bits = 0;
    for (int i : pick) bits |= 1u << i;
    hand1 = TileSet(rules.max_pip, bits);
    hand2 = TileSet(rules.max_pip, TileSet::full(rules.max_pip).bits() & ~bits);

    GameState start = initial_state(rules, {hand1, hand2}, 1);
    CensusWalker{rules, out}.walk(start);

    // next combination
    int i = h - 1;
    while (i >= 0 && pick[i] == n - h + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < h; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

PlayoutStats run_random_playouts(const Rules& rules, std::uint64_t games,
                                 std::uint64_t seed) {
  PlayoutStats stats;
  std::mt19937_64 rng(seed);
  auto universe = all_tiles(rules.max_pip);

  for (std::uint64_t g = 0; g < games; ++g) {
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<TileSet> hands(rules.num_players, TileSet(rules.max_pip));
    for (int p = 0; p < rules.num_players; ++p)
      for (int i = 0; i < rules.hand_size; ++i)
        hands[p].insert(universe[p * rules.hand_size + i]);
    int opener = static_cast<int>(rng() % rules.num_players) + 1;

    GameState s = initial_state(rules, hands, opener);
    ++stats.games;
    while (true) {
      if (!state_invariants_ok(s)) {
        ++stats.violations;
        break;
      }
      auto o = is_terminal(s);
      if (o) {
        if (o->kind == Outcome::Kind::DominoOut) {
          ++stats.domino_out;
        } else {
          ++stats.blocked;
          if (o->kind == Outcome::Kind::BlockedTie) ++stats.ties;
          if (!blocked_end_parity_ok(s, *o)) ++stats.violations;
        }
        break;
      }
      auto moves = legal_moves(s);
      // Forced-pass soundness: a pass option is only ever offered alone.
      if (moves.size() > 1)
        for (const Move& m : moves)
          if (!m.is_play()) ++stats.violations;
      const Move& m = moves[rng() % moves.size()];
      s = apply_move(s, m);
      ++stats.moves;
    }
  }
  return stats;
}

}  // namespace domino
