#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "domino/tiles.hpp"

namespace domino {

enum class Side { Left, Right };

// A tile as physically placed: `left` and `right` are its exposed pips in
// board order, so the pair may be (hi, lo) when the tile was flipped.
struct PlacedTile {
  Tile tile;
  std::uint8_t left = 0;
  std::uint8_t right = 0;

  bool operator==(const PlacedTile&) const = default;
};

// The played line of tiles. Adjacent tiles always share the touching pip;
// the two ends are the outward pips of the first and last placed tile.
class BoardChain {
 public:
  bool empty() const { return placed_.empty(); }
  int size() const { return static_cast<int>(placed_.size()); }
  const std::vector<PlacedTile>& placed() const { return placed_; }

  int left_end() const;   // requires !empty()
  int right_end() const;  // requires !empty()

  bool can_append(Tile t, Side side) const;
  void append(Tile t, Side side);  // throws EngineError on end mismatch

  // True when t matches either open end (any tile on an empty board).
  bool matches(Tile t) const;

  int pip_sum() const;
  std::vector<Tile> tiles() const;

  BoardChain reversed() const;
  // Lexicographically smaller of this chain and its reversal, so that a chain
  // and its mirror image compare equal.
  BoardChain canonical() const;

  std::string to_string() const;  // e.g. "[1|1][1|0]"

  bool operator==(const BoardChain&) const = default;
  bool operator<(const BoardChain& o) const;

 private:
  std::vector<PlacedTile> placed_;
};

}  // namespace domino
