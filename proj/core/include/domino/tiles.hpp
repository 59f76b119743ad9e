#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace domino {

// A domino tile with unordered pip ends, stored canonically as lo <= hi.
struct Tile {
  std::uint8_t lo = 0;
  std::uint8_t hi = 0;

  constexpr Tile() = default;
  constexpr Tile(int a, int b)
      : lo(static_cast<std::uint8_t>(a < b ? a : b)),
        hi(static_cast<std::uint8_t>(a < b ? b : a)) {}

  constexpr int pips() const { return lo + hi; }
  constexpr bool is_double() const { return lo == hi; }
  constexpr bool has(int v) const { return lo == v || hi == v; }
  // The pip at the opposite end from v. Requires has(v).
  constexpr int other_end(int v) const { return lo == v ? hi : lo; }

  friend constexpr auto operator<=>(const Tile&, const Tile&) = default;
};

constexpr int tile_count(int max_pip) {
  return (max_pip + 1) * (max_pip + 2) / 2;
}

// Canonical dense index: row lo, column hi-lo. [0,0]=0 ... [0,m]=m, [1,1]=m+1, ...
constexpr int tile_index(Tile t, int max_pip) {
  return t.lo * (max_pip + 1) - t.lo * (t.lo - 1) / 2 + (t.hi - t.lo);
}

Tile tile_at(int index, int max_pip);
std::vector<Tile> all_tiles(int max_pip);

std::string to_string(Tile t);
// Parses "a-b". Throws std::invalid_argument on bad syntax or pips outside 0..max_pip.
Tile tile_from_string(const std::string& s, int max_pip = 6);

// Set of tiles over the universe for a given max_pip, as a bitmask of
// canonical indexes. The universe has at most 28 tiles, so 32 bits suffice.
class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(int max_pip) : max_pip_(max_pip) {}
  TileSet(int max_pip, std::uint32_t bits) : bits_(bits), max_pip_(max_pip) {}

  static TileSet full(int max_pip) {
    return TileSet(max_pip, (tile_count(max_pip) >= 32)
                                ? ~0u
                                : ((1u << tile_count(max_pip)) - 1u));
  }

  int max_pip() const { return max_pip_; }
  std::uint32_t bits() const { return bits_; }

  bool contains(Tile t) const { return bits_ >> tile_index(t, max_pip_) & 1u; }
  void insert(Tile t) { bits_ |= 1u << tile_index(t, max_pip_); }
  void erase(Tile t) { bits_ &= ~(1u << tile_index(t, max_pip_)); }
  bool empty() const { return bits_ == 0; }
  int count() const { return __builtin_popcount(bits_); }

  int pip_sum() const;
  std::vector<Tile> tiles() const;

  TileSet complement() const {
    return TileSet(max_pip_, full(max_pip_).bits_ & ~bits_);
  }
  TileSet operator|(const TileSet& o) const { return {max_pip_, bits_ | o.bits_}; }
  TileSet operator&(const TileSet& o) const { return {max_pip_, bits_ & o.bits_}; }
  TileSet operator-(const TileSet& o) const { return {max_pip_, bits_ & ~o.bits_}; }
  bool operator==(const TileSet& o) const { return bits_ == o.bits_; }

 private:
  std::uint32_t bits_ = 0;
  int max_pip_ = 6;
};

// All tiles that carry pip value v anywhere.
TileSet tiles_with_value(int v, int max_pip);

}  // namespace domino
