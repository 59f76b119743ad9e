// Acceptance suite: each criterion runs standalone and prints a single
// CRITERION n PASS/FAIL line (with detail lines underneath on failure).
// Usage: acceptance <n> | acceptance all

#include <array>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "domino/bounds.hpp"
#include "domino/chains.hpp"
#include "domino/game.hpp"
#include "domino/oracle.hpp"
#include "domino/prover.hpp"
#include "domino/records.hpp"

using namespace domino;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "  - " << what << "\n";
    }
  }
};

std::string corpus_path(const std::string& name) {
  const char* dir = std::getenv("DOMINO_CORPUS_DIR");
  return std::string(dir ? dir : "corpus") + "/" + name;
}

// 1. Corpus replay: exact outcomes.
bool criterion_1(Checker& c) {
  auto immortal = replay(load_record_file(corpus_path("inmortal.json")));
  c.expect(immortal.outcome.kind == Outcome::Kind::DominoOut,
           "inmortal must end by domino out");
  c.expect(immortal.outcome.winner_team == 0, "inmortal winner is team A");
  c.expect(immortal.outcome.points == 111, "inmortal scores 111");

  auto minima = replay(load_record_file(corpus_path("tranca_minima.json")));
  c.expect(minima.outcome.kind == Outcome::Kind::Blocked,
           "tranca_minima must end blocked");
  c.expect(minima.outcome.blocking_number == 0, "tranca_minima blocks at 0");
  c.expect(minima.final_state.board.size() == 10,
           "tranca_minima board has 10 tiles");
  c.expect(minima.final_state.board.pip_sum() == 42,
           "tranca_minima board sums to 42");

  auto exam = replay(load_record_file(corpus_path("tranca_107.json")));
  c.expect(exam.outcome.kind == Outcome::Kind::Blocked,
           "tranca_107 must end blocked");
  c.expect(exam.outcome.blocking_number == 0, "tranca_107 blocks at 0");
  c.expect(exam.outcome.winner_team == 0, "tranca_107 winner is team A");
  c.expect(exam.outcome.points == 107, "tranca_107 scores 107");
  return c.ok;
}

// 2. Arithmetic lemmas.
bool criterion_2(Checker& c) {
  c.expect(total_pips() == 168, "total pips is 168");
  c.expect(top_hand_sum(13) == 112, "top 13 tiles sum to 112");
  c.expect(top_hand_sum(12) == 106, "top 12 tiles sum to 106");
  c.expect(lowest_residual(tiles_with_value(0, 6), 5).sum == 18,
           "five cheapest zero-free tiles sum to 18");
  return c.ok;
}

// 3. Hand impossibility for all 35 four-value sets, by full brute force.
bool criterion_3(Checker& c) {
  // one pass over the 1,184,040 seven-tile hands, collecting value masks
  auto tiles = all_tiles(6);
  std::array<int, 28> vm{};
  for (int i = 0; i < 28; ++i)
    vm[i] = (1 << tiles[i].lo) | (1 << tiles[i].hi);
  std::set<int> masks;
  std::uint64_t hands = 0;
  std::function<void(int, int, int)> rec = [&](int start, int depth, int used) {
    if (depth == 7) {
      ++hands;
      masks.insert(used);
      return;
    }
    for (int i = start; i <= 28 - (7 - depth); ++i)
      rec(i + 1, depth + 1, used | vm[i]);
  };
  rec(0, 0, 0);
  c.expect(hands == 1184040ull, "brute force covers C(28,7) hands");

  int quadruples = 0;
  for (int a = 0; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c2 = b + 1; c2 <= 6; ++c2)
        for (int d = c2 + 1; d <= 6; ++d) {
          ++quadruples;
          int forbidden = (1 << a) | (1 << b) | (1 << c2) | (1 << d);
          bool avoidable = false;
          for (int m : masks)
            if ((m & forbidden) == 0) avoidable = true;
          c.expect(!avoidable, "brute force: some hand avoids a quadruple");
          c.expect(!exists_hand_avoiding({a, b, c2, d}),
                   "constructive check disagrees with brute force");
        }
  c.expect(quadruples == 35, "all 35 quadruples covered");
  return c.ok;
}

// 4. Blocked-board minima and the bound table.
bool criterion_4(Checker& c) {
  for (int k = 0; k <= 6; ++k) {
    int under_ten = 0;
    enumerate_blocked_boards(k, 9, [&](const BlockedBoard&) { ++under_ten; });
    c.expect(under_ten == 0,
             "no blocked board under 10 tiles at k=" + std::to_string(k));
    c.expect(min_board_sum(k, 10) == 6 * k + 42,
             "min board sum at k=" + std::to_string(k) + " equals 6k+42");
  }

  auto table = bound_table();
  const std::array<int, 7> reference{108, 107, 104, 98, 93, 87, 81};
  for (int k = 0; k <= 6; ++k) {
    std::ostringstream what;
    what << "bound_table max column row k=" << k << ": required "
         << reference[k] << ", computed " << table[k].max_possible
         << " (board " << table[k].min_board_sum << " + residual "
         << table[k].min_winner_residual << "; witness tiles";
    for (Tile t : table[k].witness_low_tiles) what << " " << to_string(t);
    what << " sum to " << table[k].min_winner_residual << ")";
    c.expect(table[k].max_possible == reference[k], what.str());
  }
  return c.ok;
}

// 5. Full-line count with the doubles-insertion factor validated on
//    reduced sets.
bool criterion_5(Checker& c) {
  c.expect(count_full_chains_brute_force(2) == count_full_chains(2),
           "double-2: decomposition equals direct enumeration");
  c.expect(count_full_chains_brute_force(3) == count_full_chains(3),
           "double-3: decomposition equals direct enumeration");
  c.expect(count_full_chains(6) == 7959229931520ull,
           "double-6 full-line count is 7 959 229 931 520");
  return c.ok;
}

// 6. Main theorem: 108 unsat, 107 sat with auto-replayed witness, max 107.
bool criterion_6(Checker& c) {
  SearchOptions certification;  // no pruning, no budget
  auto unsat = search_blocked_score(108, certification);
  c.expect(unsat.verdict == Verdict::Unsat, "search(108) must be UNSAT");

  auto sat = search_blocked_score(107, certification);
  c.expect(sat.verdict == Verdict::Sat, "search(107) must be SAT");
  if (sat.witness) {
    auto rr = replay(*sat.witness);
    c.expect(rr.outcome.kind == Outcome::Kind::Blocked,
             "witness replays to a blocked game");
    c.expect(rr.outcome.points >= 107, "witness scores at least 107");
  } else {
    c.expect(false, "search(107) must produce a witness");
  }

  auto max = prove_max_blocked_score(certification);
  c.expect(max.max_score == 107, "prove_max_blocked_score() == 107");
  c.expect(max.unsat.verdict == Verdict::Unsat && max.unsat.target == 108,
           "certificate refutes 108");
  return c.ok;
}

// 7. Pruning admissibility: paired on/off runs per rule.
bool criterion_7(Checker& c) {
  for (PruneRule rule :
       {PruneRule::P1, PruneRule::P2, PruneRule::P3, PruneRule::Symmetry}) {
    auto v = validate_pruning(rule);
    c.expect(v.identical, std::string("rule ") + to_string(rule) + " [" +
                              v.scope + "]: " + v.detail);
  }
  // P2 again over the standard scope, where its cut demonstrably fires.
  PruneScope wide;
  wide.target = 108;
  wide.description = "P2 on the full search at target 108";
  auto v = validate_pruning(PruneRule::P2, wide);
  c.expect(v.identical,
           std::string("rule P2 [") + v.scope + "]: " + v.detail);
  return c.ok;
}

// 8. Oracle equivalence on the reduced games.
bool criterion_8(Checker& c) {
  for (int n : {2, 3}) {
    auto rules = Rules::reduced_two_player(n);
    auto oracle = exhaustive_blocked_census(rules);
    auto prover = prover_blocked_census(rules);
    std::string tag = "double-" + std::to_string(n);
    c.expect(oracle.invariant_violations == 0, tag + ": oracle invariants");
    c.expect(prover.max_winning_score == oracle.max_winning_score,
             tag + ": max blocked score agrees (oracle " +
                 std::to_string(oracle.max_winning_score) + ", prover " +
                 std::to_string(prover.max_winning_score) + ")");
    c.expect(prover.blocked_config_count == oracle.blocked_config_count,
             tag + ": blocked configuration count agrees (oracle " +
                 std::to_string(oracle.blocked_config_count) + ", prover " +
                 std::to_string(prover.blocked_config_count) + ")");
    c.expect(prover.blocked_configs == oracle.blocked_configs,
             tag + ": the configuration sets coincide");
  }
  return c.ok;
}

// 9. Property suites: random playouts and record round-trips.
bool criterion_9(Checker& c) {
  auto stats = run_random_playouts(Rules::standard(), 100000, 424242);
  c.expect(stats.games == 100000, "all playouts completed");
  c.expect(stats.violations == 0, "no invariant violations in playouts");

  for (const char* name :
       {"inmortal.json", "tranca_minima.json", "tranca_107.json"}) {
    auto rec = load_record_file(corpus_path(name));
    c.expect(parse_record(serialize_record(rec)) == rec,
             std::string(name) + " round-trips");
  }

  std::mt19937_64 rng(31337);
  auto universe = all_tiles(6);
  int round_trips = 0;
  for (int g = 0; g < 1000; ++g) {
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<TileSet> hands(4, TileSet(6));
    for (int p = 0; p < 4; ++p)
      for (int i = 0; i < 7; ++i) hands[p].insert(universe[p * 7 + i]);
    int opener = static_cast<int>(rng() % 4) + 1;
    GameState s = initial_state(Rules::standard(), hands, opener);
    while (!is_terminal(s)) {
      auto moves = legal_moves(s);
      s = apply_move(s, moves[rng() % moves.size()]);
    }
    GameRecord rec = record_from_game(Rules::standard(), hands, opener,
                                      s.history, "g" + std::to_string(g));
    if (parse_record(serialize_record(rec)) == rec) ++round_trips;
  }
  c.expect(round_trips == 1000, "1000 generated records round-trip");
  return c.ok;
}

const std::array<std::pair<const char*, bool (*)(Checker&)>, 9> kCriteria = {{
    {"corpus replay outcomes", criterion_1},
    {"arithmetic lemmas", criterion_2},
    {"hand impossibility (brute force)", criterion_3},
    {"blocked-board minima and bound table", criterion_4},
    {"full-line count", criterion_5},
    {"main theorem certification", criterion_6},
    {"pruning admissibility", criterion_7},
    {"oracle equivalence", criterion_8},
    {"property suites", criterion_9},
}};

bool run_criterion(int n) {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = kCriteria[n - 1].second(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << "  - exception: " << e.what() << "\n";
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << "CRITERION " << n << " " << (ok && c.ok ? "PASS" : "FAIL")
            << " — " << kCriteria[n - 1].first << " (" << secs << " s)\n";
  if (!c.detail.str().empty()) std::cout << c.detail.str();
  return ok && c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <1..9|all>\n";
    return 2;
  }
  if (std::strcmp(argv[1], "all") == 0) {
    bool all_ok = true;
    for (int n = 1; n <= 9; ++n) all_ok = run_criterion(n) && all_ok;
    return all_ok ? 0 : 1;
  }
  int n = std::atoi(argv[1]);
  if (n < 1 || n > 9) {
    std::cerr << "criterion out of range\n";
    return 2;
  }
  return run_criterion(n) ? 0 : 1;
}
