#include "domino/game.hpp"

#include <algorithm>

namespace domino {

GameState initial_state(const Rules& rules, const std::vector<TileSet>& hands,
                        int opener) {
  if (static_cast<int>(hands.size()) != rules.num_players)
    throw EngineError(EngineError::Code::BadDeal, "wrong number of hands");
  if (opener < 1 || opener > rules.num_players)
    throw EngineError(EngineError::Code::BadDeal, "opener out of range");
  std::uint32_t seen = 0;
  for (const auto& h : hands) {
    if (h.max_pip() != rules.max_pip)
      throw EngineError(EngineError::Code::BadDeal, "hand universe mismatch");
    if (h.count() != rules.hand_size)
      throw EngineError(EngineError::Code::BadDeal, "hand size mismatch");
    if (seen & h.bits())
      throw EngineError(EngineError::Code::BadDeal, "hands overlap");
    seen |= h.bits();
  }
  if (rules.deal_covers_universe() &&
      seen != TileSet::full(rules.max_pip).bits())
    throw EngineError(EngineError::Code::BadDeal, "deal does not cover set");

  GameState s;
  s.rules = rules;
  s.hands = hands;
  s.turn = opener;
  return s;
}

int tile_pips(Tile t) { return t.pips(); }

namespace {

bool hand_has_play(const GameState& s, int player) {
  const TileSet& h = s.hand(player);
  if (s.board.empty()) return !h.empty();
  std::uint32_t match =
      tiles_with_value(s.board.left_end(), s.rules.max_pip).bits() |
      tiles_with_value(s.board.right_end(), s.rules.max_pip).bits();
  return (h.bits() & match) != 0;
}

std::optional<int> empty_hand_player(const GameState& s) {
  for (int p = 1; p <= s.rules.num_players; ++p)
    if (s.hand(p).empty()) return p;
  return std::nullopt;
}

}  // namespace

std::vector<Move> legal_moves(const GameState& s) {
  if (empty_hand_player(s))
    throw EngineError(EngineError::Code::GameOver, "game already over");

  std::vector<Move> moves;
  const TileSet& h = s.hand(s.turn);
  if (s.board.empty()) {
    if (s.rules.highest_double_opens && s.history.empty()) {
      // Tournament convention for the first hand of a match: the opener must
      // lead the highest double they hold, if any.
      Tile best{};
      bool found = false;
      for (Tile t : h.tiles())
        if (t.is_double() && (!found || t.hi > best.hi)) best = t, found = true;
      if (found) return {Move::play(best, Side::Right)};
    }
    for (Tile t : h.tiles()) moves.push_back(Move::play(t, Side::Right));
    return moves;
  }
  for (Tile t : h.tiles()) {
    if (t.has(s.board.left_end())) moves.push_back(Move::play(t, Side::Left));
    if (t.has(s.board.right_end()))
      moves.push_back(Move::play(t, Side::Right));
  }
  if (moves.empty()) moves.push_back(Move::pass());
  return moves;
}

GameState apply_move(const GameState& s, const Move& m) {
  if (empty_hand_player(s))
    throw EngineError(EngineError::Code::GameOver, "game already over");

  GameState next = s;
  if (m.is_play()) {
    if (!s.hand(s.turn).contains(m.tile))
      throw EngineError(EngineError::Code::TileNotHeld,
                        "player " + std::to_string(s.turn) + " does not hold " +
                            to_string(m.tile));
    next.board.append(m.tile, m.side);  // throws EndMismatch
    next.hands[s.turn - 1].erase(m.tile);
    next.pass_streak = 0;
  } else {
    if (hand_has_play(s, s.turn))
      throw EngineError(EngineError::Code::ForcedPlayViolation,
                        "player " + std::to_string(s.turn) +
                            " must play a matching tile");
    next.pass_streak = s.pass_streak + 1;
  }
  next.history.emplace_back(s.turn, m);
  next.turn = s.rules.next_player(s.turn);
  return next;
}

std::optional<Outcome> is_terminal(const GameState& s) {
  if (auto p = empty_hand_player(s)) {
    Outcome o;
    o.kind = Outcome::Kind::DominoOut;
    o.winner_team = s.rules.team_of(*p);
    o.points = team_pip_sum(s, 1 - *o.winner_team);
    return o;
  }
  if (s.board.empty()) return std::nullopt;
  for (int p = 1; p <= s.rules.num_players; ++p)
    if (hand_has_play(s, p)) return std::nullopt;

  Outcome o;
  o.ends = {s.board.left_end(), s.board.right_end()};
  if (o.ends.first == o.ends.second) o.blocking_number = o.ends.first;
  int sum_a = team_pip_sum(s, 0);
  int sum_b = team_pip_sum(s, 1);
  if (sum_a == sum_b) {
    o.kind = Outcome::Kind::BlockedTie;
    o.points = 0;
  } else {
    o.kind = Outcome::Kind::Blocked;
    o.winner_team = sum_a < sum_b ? 0 : 1;
    o.points = std::max(sum_a, sum_b);
  }
  return o;
}

int blocking_number(const GameState& s) {
  auto o = is_terminal(s);
  if (!o || (o->kind != Outcome::Kind::Blocked &&
             o->kind != Outcome::Kind::BlockedTie) ||
      !o->blocking_number)
    throw EngineError(EngineError::Code::NotBlocked, "state is not blocked");
  return *o->blocking_number;
}

int team_pip_sum(const GameState& s, int team) {
  int sum = 0;
  for (int p = 1; p <= s.rules.num_players; ++p)
    if (s.rules.team_of(p) == team) sum += s.hand(p).pip_sum();
  return sum;
}

bool conservation_holds(const GameState& s) {
  std::uint32_t bits = 0;
  int total = 0;
  for (const auto& h : s.hands) {
    if (bits & h.bits()) return false;
    bits |= h.bits();
    total += h.count();
  }
  for (Tile t : s.board.tiles()) {
    std::uint32_t b = 1u << tile_index(t, s.rules.max_pip);
    if (bits & b) return false;
    bits |= b;
    ++total;
  }
  return total == s.rules.tile_count() &&
         bits == TileSet::full(s.rules.max_pip).bits();
}

}  // namespace domino
