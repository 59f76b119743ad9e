#include "domino/bounds.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "domino/chains.hpp"

namespace domino {

int total_pips(const Rules& rules) {
  return TileSet::full(rules.max_pip).pip_sum();
}

bool exists_hand_avoiding(const std::vector<int>& values, const Rules& rules) {
  std::set<int> distinct(values.begin(), values.end());
  if (distinct.size() != values.size())
    throw std::invalid_argument("values must be distinct");
  if (values.empty() || static_cast<int>(values.size()) > rules.max_pip)
    throw std::invalid_argument("need between 1 and max_pip values");
  for (int v : values)
    if (v < 0 || v > rules.max_pip)
      throw std::invalid_argument("value out of range");

  TileSet blocked(rules.max_pip);
  for (int v : values) blocked = blocked | tiles_with_value(v, rules.max_pip);
  return blocked.complement().count() >= rules.hand_size;
}

Residual lowest_residual(const TileSet& excluded, int count) {
  auto avail = excluded.complement().tiles();
  if (static_cast<int>(avail.size()) < count)
    throw std::invalid_argument("not enough tiles outside the excluded set");
  std::stable_sort(avail.begin(), avail.end(),
                   [](Tile a, Tile b) { return a.pips() < b.pips(); });
  Residual r;
  r.witness.assign(avail.begin(), avail.begin() + count);
  for (Tile t : r.witness) r.sum += t.pips();
  return r;
}

int top_hand_sum(int count, const Rules& rules) {
  auto tiles = TileSet::full(rules.max_pip).tiles();
  if (count < 0 || count > static_cast<int>(tiles.size()))
    throw std::invalid_argument("count out of range");
  std::sort(tiles.begin(), tiles.end(),
            [](Tile a, Tile b) { return a.pips() > b.pips(); });
  int sum = 0;
  for (int i = 0; i < count; ++i) sum += tiles[i].pips();
  return sum;
}

void for_each_perfect_matching(
    const std::vector<int>& values,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& sink) {
  std::vector<int> vals = values;
  std::sort(vals.begin(), vals.end());
  std::vector<std::pair<int, int>> matching;
  std::vector<bool> used(vals.size(), false);

  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < vals.size() && used[first]) ++first;
    if (first == vals.size()) {
      sink(matching);
      return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < vals.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      matching.emplace_back(vals[first], vals[j]);
      rec();
      matching.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  if (vals.size() % 2 == 0) rec();
}

std::array<BoundRow, 7> bound_table() {
  const Rules rules = Rules::standard();
  const int total = total_pips(rules);
  std::array<BoundRow, 7> rows{};

  for (int k = 0; k <= 6; ++k) {
    BoundRow row;
    row.k = k;
    row.min_board_sum = min_board_sum(k, 10, rules);

    std::vector<int> others;
    for (int v = 0; v <= 6; ++v)
      if (v != k) others.push_back(v);

    Residual best{};
    bool have = false;
    for_each_perfect_matching(others, [&](const auto& matching) {
      TileSet excluded = tiles_with_value(k, 6);
      for (auto [a, b] : matching) excluded.insert(Tile(a, b));
      Residual r = lowest_residual(excluded, 5);
      if (!have || r.sum < best.sum) {
        best = r;
        have = true;
      }
    });
    row.min_winner_residual = best.sum;
    row.witness_low_tiles = best.witness;
    row.max_possible = total - row.min_board_sum - row.min_winner_residual;
    rows[k] = row;
  }
  return rows;
}

}  // namespace domino
