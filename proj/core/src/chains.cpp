#include "domino/chains.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace domino {

namespace {

// Parity of value occurrences required of the extra (non-end) tiles so that
// the finished chain has each value's count even except at open ends.
std::array<int, 8> required_extra_parity(const Rules& rules, int end_a,
                                         int end_b, const TileSet& required) {
  std::array<int, 8> parity{};
  for (int v = 0; v <= rules.max_pip; ++v) {
    int have = 0;
    for (Tile t : required.tiles()) {
      if (t.lo == v) ++have;
      if (t.hi == v) ++have;
    }
    int want = (v == end_a ? 1 : 0) + (v == end_b ? 1 : 0);
    parity[v] = (want - have) & 1;
  }
  return parity;
}

void enumerate_extra_sets(const std::vector<Tile>& candidates, std::size_t idx,
                          int remaining, std::array<int, 8>& parity,
                          TileSet& current,
                          const std::function<void(const TileSet&)>& sink) {
  if (remaining == 0) {
    if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; }))
      sink(current);
    return;
  }
  if (idx >= candidates.size() ||
      static_cast<int>(candidates.size() - idx) < remaining)
    return;
  // take candidates[idx]
  Tile t = candidates[idx];
  parity[t.lo] ^= 1;
  parity[t.hi] ^= 1;  // doubles cancel: two occurrences keep parity
  current.insert(t);
  enumerate_extra_sets(candidates, idx + 1, remaining - 1, parity, current,
                       sink);
  current.erase(t);
  parity[t.lo] ^= 1;
  parity[t.hi] ^= 1;
  // skip candidates[idx]
  enumerate_extra_sets(candidates, idx + 1, remaining, parity, current, sink);
}

}  // namespace

void enumerate_blocked_sets(const Rules& rules, int end_a, int end_b, int tiles,
                            const std::function<void(const TileSet&)>& sink) {
  TileSet required =
      tiles_with_value(end_a, rules.max_pip) | tiles_with_value(end_b, rules.max_pip);
  int extra = tiles - required.count();
  if (extra < 0) return;

  std::vector<Tile> candidates = required.complement().tiles();
  std::sort(candidates.begin(), candidates.end());
  auto parity = required_extra_parity(rules, end_a, end_b, required);
  TileSet current = required;
  enumerate_extra_sets(candidates, 0, extra, parity, current, sink);
}

namespace {

struct ArrangeCtx {
  const Rules& rules;
  int end_b;
  std::vector<Tile> tiles;
  std::vector<bool> used;
  BoardChain chain;
  const std::function<void(const BoardChain&)>& sink;

  void extend() {
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) {
      if (chain.right_end() == end_b) {
        BoardChain rev = chain.reversed();
        if (!(rev < chain)) sink(chain);
      }
      return;
    }
    int end = chain.right_end();
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      if (used[i] || !tiles[i].has(end)) continue;
      used[i] = true;
      BoardChain saved = chain;
      chain.append(tiles[i], Side::Right);
      extend();
      chain = std::move(saved);
      used[i] = false;
    }
  }
};

}  // namespace

void enumerate_arrangements(const Rules& rules, const TileSet& set, int end_a,
                            int end_b,
                            const std::function<void(const BoardChain&)>& sink) {
  ArrangeCtx ctx{rules, end_b, set.tiles(), {}, {}, sink};
  std::sort(ctx.tiles.begin(), ctx.tiles.end());
  ctx.used.assign(ctx.tiles.size(), false);
  for (std::size_t i = 0; i < ctx.tiles.size(); ++i) {
    if (!ctx.tiles[i].has(end_a)) continue;
    ctx.used[i] = true;
    // orient so the left end shows end_a
    BoardChain c;
    c.append(ctx.tiles[i], Side::Right);
    if (c.left_end() != end_a) c = c.reversed();
    ctx.chain = c;
    ctx.extend();
    ctx.used[i] = false;
  }
}

void enumerate_blocked_boards(int k, int max_tiles,
                              const std::function<void(const BlockedBoard&)>& sink,
                              const Rules& rules) {
  for (int n = rules.max_pip + 1; n <= max_tiles; ++n) {
    enumerate_blocked_sets(rules, k, k, n, [&](const TileSet& set) {
      enumerate_arrangements(rules, set, k, k, [&](const BoardChain& chain) {
        sink(BlockedBoard{chain, k, chain.size(), chain.pip_sum()});
      });
    });
  }
}

int min_board_sum(int k, int tiles, const Rules& rules) {
  int best = std::numeric_limits<int>::max();
  enumerate_blocked_sets(rules, k, k, tiles, [&](const TileSet& set) {
    best = std::min(best, set.pip_sum());
  });
  if (best == std::numeric_limits<int>::max())
    throw ChainsError(ChainsError::Code::NoSuchBoard,
                      "no blocked board at " + std::to_string(k) + " with " +
                          std::to_string(tiles) + " tiles");
  return best;
}

bool is_minimal_tranca(const BoardChain& chain) {
  if (chain.size() != 10) return false;
  if (chain.left_end() != 0 || chain.right_end() != 0) return false;
  TileSet set(6);
  for (Tile t : chain.tiles()) set.insert(t);
  if ((set & tiles_with_value(0, 6)).count() != 7) return false;
  return chain.pip_sum() == 42;
}

std::array<Tile, 3> connectors(const BoardChain& chain) {
  if (!is_minimal_tranca(chain))
    throw ChainsError(ChainsError::Code::NotMinimalTranca,
                      "chain is not a 10-tile block at 0");
  std::array<Tile, 3> out{};
  int n = 0;
  for (Tile t : chain.tiles())
    if (!t.has(0)) out[n++] = t;
  return out;
}

TrancaShape classify_shape(const BoardChain& chain, bool double_blank_last) {
  connectors(chain);  // validates
  int pos = -1;
  const auto& placed = chain.placed();
  for (int i = 0; i < chain.size(); ++i)
    if (placed[i].tile == Tile(0, 0)) pos = i;
  if (double_blank_last) return TrancaShape::T4;
  // Read as stored (the order the line physically grew). A 0-0 at the far
  // extremity is the leading-tile template seen from the other direction.
  switch (pos) {
    case 0:
    case 9:
      return TrancaShape::T1;
    case 3:
      return TrancaShape::T2;
    case 6:
      return TrancaShape::T3;
    default:
      throw ChainsError(ChainsError::Code::NotMinimalTranca,
                        "0-0 tile at unexpected position");
  }
}

namespace {

// Insertion slots for the double [w,w] along a full trail from u to v: one
// per interior visit of w plus one per exposed end equal to w.
std::uint64_t double_insertion_factor(int max_pip, int u, int v) {
  std::uint64_t factor = 1;
  int deg = max_pip;  // vertex degree in the complete graph on 0..max_pip
  for (int w = 0; w <= max_pip; ++w) {
    int ends = (w == u ? 1 : 0) + (w == v ? 1 : 0);
    int slots = (deg - ends) / 2 + ends;
    factor *= static_cast<std::uint64_t>(slots);
  }
  return factor;
}

}  // namespace

std::uint64_t count_full_chains(int max_pip) {
  const int m = max_pip;
  if (m == 0) return 1;  // the lone 0-0 tile

  // Non-double tiles are the edges of the complete graph K_{m+1}.
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) edges.emplace_back(a, b);
  const int e = static_cast<int>(edges.size());
  const int verts = m + 1;

  // adj[v] = list of (edge index, other endpoint)
  std::vector<std::vector<std::pair<int, int>>> adj(verts);
  for (int i = 0; i < e; ++i) {
    adj[edges[i].first].emplace_back(i, edges[i].second);
    adj[edges[i].second].emplace_back(i, edges[i].first);
  }

  // g[mask * verts + v] = number of directed trails using exactly the edges
  // in mask and ending at v.
  std::vector<std::uint64_t> g(static_cast<std::size_t>(1u << e) * verts, 0);
  for (int i = 0; i < e; ++i) {
    g[static_cast<std::size_t>(1u << i) * verts + edges[i].first] += 1;
    g[static_cast<std::size_t>(1u << i) * verts + edges[i].second] += 1;
  }
  const std::uint32_t full = (1u << e) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int v = 0; v < verts; ++v) {
      std::uint64_t c = g[static_cast<std::size_t>(mask) * verts + v];
      if (!c) continue;
      for (auto [ei, w] : adj[v]) {
        if (mask & (1u << ei)) continue;
        g[(static_cast<std::size_t>(mask) | (1u << ei)) * verts + w] += c;
      }
    }
  }

  // A full trail's start vertex is determined by parity: with every degree
  // even the trail is closed (start == end); with exactly two odd vertices
  // it runs between them. More odd vertices admit no trail and the DP is 0.
  std::uint64_t total = 0;
  for (int v = 0; v < verts; ++v) {
    std::uint64_t trails = g[static_cast<std::size_t>(full) * verts + v];
    if (!trails) continue;
    int u = (m % 2 == 0) ? v : (verts == 2 ? 1 - v : -1);
    total += trails * double_insertion_factor(m, u, v);
  }
  return total;
}

std::uint64_t count_full_chains_brute_force(int max_pip) {
  if (max_pip > 4)
    throw ChainsError(ChainsError::Code::Unsupported,
                      "brute-force count is only practical for max_pip <= 4");
  std::vector<Tile> tiles = all_tiles(max_pip);
  const int n = static_cast<int>(tiles.size());
  std::uint64_t count = 0;

  struct Rec {
    const std::vector<Tile>& tiles;
    int n;
    std::uint64_t& count;
    std::uint32_t used = 0;
    void go(int depth, int right) {
      if (depth == n) {
        ++count;
        return;
      }
      for (int i = 0; i < n; ++i) {
        if (used & (1u << i)) continue;
        Tile t = tiles[i];
        if (!t.has(right)) continue;  // orientation forced by the match
        used |= 1u << i;
        go(depth + 1, t.other_end(right));
        used &= ~(1u << i);
      }
    }
  } rec{tiles, n, count};

  for (int i = 0; i < n; ++i) {
    Tile t = tiles[i];
    rec.used = 1u << i;
    rec.go(1, t.hi);  // oriented lo->hi
    if (!t.is_double()) rec.go(1, t.lo);
  }
  return count;
}

}  // namespace domino
