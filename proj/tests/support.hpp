#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "domino/game.hpp"
#include "domino/tiles.hpp"

namespace test_support {

inline std::string corpus_path(const std::string& name) {
  const char* dir = std::getenv("DOMINO_CORPUS_DIR");
  return std::string(dir ? dir : "corpus") + "/" + name;
}

inline domino::TileSet make_hand(std::initializer_list<const char*> tiles,
                                 int max_pip = 6) {
  domino::TileSet s(max_pip);
  for (const char* t : tiles) s.insert(domino::tile_from_string(t, max_pip));
  return s;
}

// Plays the given tile strings from alternating sides onto a fresh chain.
inline domino::BoardChain chain_of(std::initializer_list<const char*> tiles) {
  domino::BoardChain c;
  for (const char* t : tiles)
    c.append(domino::tile_from_string(t), domino::Side::Right);
  return c;
}

}  // namespace test_support
