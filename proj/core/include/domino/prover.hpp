#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "domino/records.hpp"
#include "domino/rules.hpp"
#include "domino/tiles.hpp"

namespace domino {

// Named search reductions. Each is optional, independently toggleable, and
// checked by paired on/off runs over validation scopes; certification runs
// keep all of them off so the exhaustive search stays assumption-free.
//
//   P1  in hypotheses where the losing team never plays, cut a line once both
//       losing players have passed on a common value other than the block
//   P2  in the same hypotheses, cut a line when a losing player passes on two
//       distinct values that are both off the block
//   P3  drop hypotheses in which the losing team never plays at all
//   S   decide one representative per pip-relabeling orbit of hypotheses
struct PruneToggles {
  bool p1 = false;
  bool p2 = false;
  bool p3 = false;
  bool symmetry = false;
};

struct SearchStats {
  std::uint64_t frames_generated = 0;
  std::uint64_t frames_searched = 0;
  std::uint64_t nodes = 0;
  std::uint64_t pruned_p1 = 0;
  std::uint64_t pruned_p2 = 0;
  std::uint64_t pruned_p3 = 0;
  std::uint64_t pruned_symmetry = 0;
  double wall_seconds = 0;
  std::string exhaustiveness_note;
};

enum class Verdict { Sat, Unsat, BudgetExceeded };
const char* to_string(Verdict v);

struct ProofResult {
  int target = 0;
  Verdict verdict = Verdict::Unsat;
  std::optional<GameRecord> witness;  // Sat only; replays to a blocked game
  SearchStats stats;
};

struct SearchOptions {
  PruneToggles pruning;
  std::uint64_t node_budget = 0;  // 0 = unbounded
  int threads = 1;
};

// Exact maximum of (total - board - cheapest winner_keep retained tiles) over
// all blocked boards with `n` tiles at block value k: an upper bound on the
// winning score for such games when the winners retain >= winner_keep tiles.
int cell_score_bound(int k, int n, int winner_keep,
                     const Rules& rules = Rules::standard());

// The (k, board-size) cells whose score bound reaches `target` under the
// table analysis for ten-tile boards: losers retain at most thirteen tiles,
// so winners retain at least five. Board sizes beyond ten only lower the
// bound (see cell_score_bound); the full search covers them regardless.
std::vector<std::pair<int, int>> stage_a_candidates(int target);

// Decides whether a legal blocked game exists whose winning team scores at
// least `target`. Sat results carry a witness record that replays through the
// records module; Unsat results are exhaustive over every final-configuration
// hypothesis surviving exact pip arithmetic (board sets for all block values
// and board sizes, with winner retained-hand sizes down to two tiles).
ProofResult search_blocked_score(int target, const SearchOptions& opts = {});

struct BandSummary {
  int target = 0;
  Verdict verdict = Verdict::Unsat;
  std::uint64_t frames = 0;
  std::uint64_t nodes = 0;
};

struct MaxScoreResult {
  int max_score = 0;
  ProofResult sat;    // certificate at max_score
  ProofResult unsat;  // certificate at max_score + 1
  std::vector<BandSummary> bands;  // per-score descent from the global bound
};

// Largest target with a Sat verdict, established by descending over exact
// score bands from the arithmetic bound: every band above the answer is
// refuted exhaustively, and the answer band yields a replayable witness.
MaxScoreResult prove_max_blocked_score(const SearchOptions& opts = {});

// Census of every reachable blocked final configuration of a reduced
// two-player game, via the same frame machinery (player 1 opens). Compared
// verbatim against the engine-level brute-force oracle.
struct ProverCensus {
  int max_winning_score = 0;
  std::uint64_t blocked_config_count = 0;
  std::set<std::string> blocked_configs;
  SearchStats stats;
};
ProverCensus prover_blocked_census(const Rules& rules,
                                   const PruneToggles& toggles = {});

// True when some legal game ends blocked exactly on the `board` tile set
// with the given ends and each team retaining exactly `team_keeps[team]`.
// Seats within a team and the opener are unconstrained. Cross-checks the
// frame decider against configurations reached by real playouts.
bool blocked_config_reachable(const Rules& rules, const TileSet& board,
                              std::pair<int, int> ends,
                              const std::vector<TileSet>& team_keeps);

enum class PruneRule { P1, P2, P3, Symmetry };
const char* to_string(PruneRule r);

struct PruneScope {
  std::string description;
  int target = 108;
  // Restrict standard-search frames to this exact board set when present.
  std::optional<TileSet> board_filter;
  bool reduced = false;  // validate over the reduced census instead
  int reduced_max_pip = 3;
};

// The documented validation scope for each rule.
PruneScope default_scope(PruneRule rule);

struct PruneValidation {
  PruneRule rule = PruneRule::P3;
  std::string scope;
  bool identical = false;
  std::string detail;
};

// Paired run with the rule on vs. off over the scope; any verdict difference
// fails validation.
PruneValidation validate_pruning(PruneRule rule, const PruneScope& scope);
PruneValidation validate_pruning(PruneRule rule);

std::string certification_report_json(const MaxScoreResult& result);

}  // namespace domino
