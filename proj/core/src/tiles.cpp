#include "domino/tiles.hpp"

#include <stdexcept>

namespace domino {

Tile tile_at(int index, int max_pip) {
  int lo = 0;
  int row = max_pip + 1;
  while (index >= row) {
    index -= row;
    --row;
    ++lo;
  }
  return Tile(lo, lo + index);
}

std::vector<Tile> all_tiles(int max_pip) {
  std::vector<Tile> out;
  out.reserve(tile_count(max_pip));
  for (int lo = 0; lo <= max_pip; ++lo)
    for (int hi = lo; hi <= max_pip; ++hi) out.emplace_back(lo, hi);
  return out;
}

std::string to_string(Tile t) {
  return std::to_string(t.lo) + "-" + std::to_string(t.hi);
}

Tile tile_from_string(const std::string& s, int max_pip) {
  auto dash = s.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 >= s.size())
    throw std::invalid_argument("bad tile syntax: '" + s + "'");
  int a = 0, b = 0;
  try {
    std::size_t used_a = 0, used_b = 0;
    a = std::stoi(s.substr(0, dash), &used_a);
    b = std::stoi(s.substr(dash + 1), &used_b);
    if (used_a != dash || used_b != s.size() - dash - 1)
      throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad tile syntax: '" + s + "'");
  }
  if (a < 0 || b < 0 || a > max_pip || b > max_pip)
    throw std::invalid_argument("pip out of range in '" + s + "'");
  return Tile(a, b);
}

int TileSet::pip_sum() const {
  int s = 0;
  std::uint32_t b = bits_;
  while (b) {
    int i = __builtin_ctz(b);
    b &= b - 1;
    s += tile_at(i, max_pip_).pips();
  }
  return s;
}

std::vector<Tile> TileSet::tiles() const {
  std::vector<Tile> out;
  std::uint32_t b = bits_;
  while (b) {
    int i = __builtin_ctz(b);
    b &= b - 1;
    out.push_back(tile_at(i, max_pip_));
  }
  return out;
}

TileSet tiles_with_value(int v, int max_pip) {
  TileSet s(max_pip);
  for (int x = 0; x <= max_pip; ++x) s.insert(Tile(v, x));
  return s;
}

}  // namespace domino
