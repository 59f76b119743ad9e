#include "domino/board.hpp"

#include "domino/game.hpp"

namespace domino {

int BoardChain::left_end() const { return placed_.front().left; }
int BoardChain::right_end() const { return placed_.back().right; }

bool BoardChain::can_append(Tile t, Side side) const {
  if (placed_.empty()) return true;
  int end = side == Side::Left ? left_end() : right_end();
  return t.has(end);
}

void BoardChain::append(Tile t, Side side) {
  if (placed_.empty()) {
    placed_.push_back({t, t.lo, t.hi});
    return;
  }
  if (!can_append(t, side))
    throw EngineError(EngineError::Code::EndMismatch,
                      "tile " + domino::to_string(t) + " does not match end");
  if (side == Side::Left) {
    int end = left_end();
    placed_.insert(placed_.begin(),
                   {t, static_cast<std::uint8_t>(t.other_end(end)),
                    static_cast<std::uint8_t>(end)});
  } else {
    int end = right_end();
    placed_.push_back({t, static_cast<std::uint8_t>(end),
                       static_cast<std::uint8_t>(t.other_end(end))});
  }
}

bool BoardChain::matches(Tile t) const {
  if (placed_.empty()) return true;
  return t.has(left_end()) || t.has(right_end());
}

int BoardChain::pip_sum() const {
  int s = 0;
  for (const auto& p : placed_) s += p.tile.pips();
  return s;
}

std::vector<Tile> BoardChain::tiles() const {
  std::vector<Tile> out;
  out.reserve(placed_.size());
  for (const auto& p : placed_) out.push_back(p.tile);
  return out;
}

BoardChain BoardChain::reversed() const {
  BoardChain r;
  r.placed_.reserve(placed_.size());
  for (auto it = placed_.rbegin(); it != placed_.rend(); ++it)
    r.placed_.push_back({it->tile, it->right, it->left});
  return r;
}

bool BoardChain::operator<(const BoardChain& o) const {
  auto key = [](const PlacedTile& p) {
    return std::pair<int, int>(p.left, p.right);
  };
  auto a = placed_.begin(), b = o.placed_.begin();
  for (; a != placed_.end() && b != o.placed_.end(); ++a, ++b) {
    if (key(*a) != key(*b)) return key(*a) < key(*b);
  }
  return placed_.size() < o.placed_.size();
}

BoardChain BoardChain::canonical() const {
  BoardChain r = reversed();
  return r < *this ? r : *this;
}

std::string BoardChain::to_string() const {
  std::string s;
  for (const auto& p : placed_) {
    s += "[" + std::to_string(p.left) + "|" + std::to_string(p.right) + "]";
  }
  return s;
}

}  // namespace domino
