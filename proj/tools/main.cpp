// Command-line front end: replay and validate game records, enumerate
// blocked boards, print the bound table, count full chains, and run the
// blocked-score search up to full certification.

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "domino/bounds.hpp"
#include "domino/chains.hpp"
#include "domino/game.hpp"
#include "domino/oracle.hpp"
#include "domino/prover.hpp"
#include "domino/records.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string outcome_line(const domino::Outcome& o) {
  using Kind = domino::Outcome::Kind;
  switch (o.kind) {
    case Kind::DominoOut:
      return std::string("DominoOut team ") + domino::team_name(*o.winner_team) +
             " " + std::to_string(o.points);
    case Kind::Blocked:
      return std::string("Blocked team ") + domino::team_name(*o.winner_team) +
             " " + std::to_string(o.points) + " at " +
             (o.blocking_number ? std::to_string(*o.blocking_number)
                                : std::to_string(o.ends.first) + "/" +
                                      std::to_string(o.ends.second));
    default:
      return "BlockedTie 0 at " + std::to_string(o.ends.first);
  }
}

ordered_json outcome_json(const domino::Outcome& o) {
  using Kind = domino::Outcome::Kind;
  ordered_json j;
  j["kind"] = o.kind == Kind::DominoOut
                  ? "domino_out"
                  : (o.kind == Kind::Blocked ? "blocked" : "blocked_tie");
  if (o.winner_team) j["winner_team"] = domino::team_name(*o.winner_team);
  j["points"] = o.points;
  if (o.blocking_number) j["blocking_number"] = *o.blocking_number;
  return j;
}

domino::PruneToggles parse_toggles(const std::vector<std::string>& names) {
  domino::PruneToggles t;
  for (const auto& n : names) {
    if (n == "p1")
      t.p1 = true;
    else if (n == "p2")
      t.p2 = true;
    else if (n == "p3")
      t.p3 = true;
    else if (n == "s" || n == "sym")
      t.symmetry = true;
    else
      throw CLI::ValidationError("--prune", "unknown rule '" + n + "'");
  }
  return t;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Bare file names resolve against DOMINO_CORPUS_DIR (default ./corpus).
std::string resolve_record_path(const std::string& path) {
  if (std::ifstream(path).good()) return path;
  if (path.find('/') == std::string::npos) {
    const char* dir = std::getenv("DOMINO_CORPUS_DIR");
    std::string candidate = std::string(dir ? dir : "corpus") + "/" + path;
    if (std::ifstream(candidate).good()) return candidate;
  }
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-player partnership dominoes: replay, enumeration, and "
               "blocked-score certification"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // replay / validate
  std::string record_path;
  auto* replay_cmd = app.add_subcommand("replay", "replay a game record");
  replay_cmd->add_option("file", record_path, "record file")->required();
  auto* validate_cmd =
      app.add_subcommand("validate", "check a record's legality only");
  validate_cmd->add_option("file", record_path, "record file")->required();

  // enumerate-blocked
  int k = 0, max_tiles = 10, limit = 0;
  auto* enum_cmd =
      app.add_subcommand("enumerate-blocked", "list blocked boards at k");
  enum_cmd->add_option("--k", k, "block value")->required();
  enum_cmd->add_option("--max-tiles", max_tiles, "board size cap")->required();
  enum_cmd->add_option("--limit", limit, "print at most this many boards");

  // min-board-sum
  int tiles = 10;
  auto* minsum_cmd =
      app.add_subcommand("min-board-sum", "minimum board pip sum at k");
  minsum_cmd->add_option("--k", k, "block value")->required();
  minsum_cmd->add_option("--tiles", tiles, "board size")->required();

  // count-chains
  int max_pip = 6;
  bool brute = false;
  auto* count_cmd =
      app.add_subcommand("count-chains", "count full-line arrangements");
  count_cmd->add_option("--max-pip", max_pip, "set size (double-n)");
  count_cmd->add_flag("--brute-force", brute, "direct enumeration (n <= 4)");

  // bounds-table
  auto* bounds_cmd =
      app.add_subcommand("bounds-table", "per-block-value score bounds");

  // hand-check
  std::vector<int> values;
  auto* hand_cmd = app.add_subcommand(
      "hand-check", "can a full hand avoid all the given values?");
  hand_cmd->add_option("values", values, "pip values")->required();

  // search / prove-max
  int target = 108;
  std::vector<std::string> prune_names;
  std::uint64_t budget = 0;
  int threads = 1;
  std::string out_dir = ".";
  auto* search_cmd =
      app.add_subcommand("search", "decide blocked games scoring >= target");
  search_cmd->add_option("--target", target, "score target")->required();
  search_cmd->add_option("--prune", prune_names,
                         "rules to enable: p1 p2 p3 s");
  search_cmd->add_option("--budget", budget, "node budget (0 = unbounded)");
  search_cmd->add_option("--threads", threads, "worker threads");

  auto* prove_cmd =
      app.add_subcommand("prove-max", "certify the maximum blocked score");
  bool no_budget = false;
  prove_cmd->add_flag("--no-budget", no_budget,
                      "force an unbounded certification run");
  prove_cmd->add_option("--budget", budget, "node budget (0 = unbounded)");
  prove_cmd->add_option("--threads", threads, "worker threads");
  prove_cmd->add_option("--out", out_dir, "directory for certificates");

  // oracle
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "reduced-set brute force vs. the prover census");
  oracle_cmd->add_option("--max-pip", max_pip, "reduced set size (2 or 3)");

  // validate-pruning
  std::string rule_name = "p3";
  auto* prune_cmd = app.add_subcommand(
      "validate-pruning", "paired on/off runs for one pruning rule");
  prune_cmd->add_option("--rule", rule_name, "p1, p2, p3, or s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*replay_cmd || *validate_cmd) {
      auto rec = domino::load_record_file(resolve_record_path(record_path));
      if (*validate_cmd) {
        domino::replay(rec, domino::Rules::standard(),
                       /*require_terminal=*/false);
        std::cout << (as_json ? "{\"valid\":true}" : "valid") << "\n";
        return kExitOk;
      }
      auto rr = domino::replay(rec);
      if (as_json) {
        ordered_json j = outcome_json(rr.outcome);
        j["board"] = rr.final_state.board.to_string();
        j["board_tiles"] = rr.final_state.board.size();
        j["board_pips"] = rr.final_state.board.pip_sum();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << outcome_line(rr.outcome) << "\n";
      }
      return kExitOk;
    }

    if (*enum_cmd) {
      std::uint64_t count = 0;
      int min_sum = -1;
      int printed = 0;
      domino::enumerate_blocked_boards(k, max_tiles, [&](const auto& b) {
        ++count;
        if (min_sum < 0 || b.pip_sum < min_sum) min_sum = b.pip_sum;
        if (!as_json && (limit == 0 || printed < limit)) {
          std::cout << b.chain.to_string() << " tiles=" << b.tile_count
                    << " pips=" << b.pip_sum << "\n";
          ++printed;
        }
      });
      if (as_json) {
        ordered_json j{{"k", k},
                       {"max_tiles", max_tiles},
                       {"boards", count},
                       {"min_pip_sum", min_sum}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "boards=" << count << " min_pips=" << min_sum << "\n";
      }
      return kExitOk;
    }

    if (*minsum_cmd) {
      int sum = domino::min_board_sum(k, tiles);
      if (as_json)
        std::cout << ordered_json{{"k", k}, {"tiles", tiles}, {"min_pip_sum", sum}}
                         .dump(2)
                  << "\n";
      else
        std::cout << sum << "\n";
      return kExitOk;
    }

    if (*count_cmd) {
      std::uint64_t n = brute ? domino::count_full_chains_brute_force(max_pip)
                              : domino::count_full_chains(max_pip);
      if (as_json)
        std::cout << ordered_json{{"max_pip", max_pip}, {"count", n}}.dump(2)
                  << "\n";
      else
        std::cout << n << "\n";
      return kExitOk;
    }

    if (*bounds_cmd) {
      auto table = domino::bound_table();
      if (as_json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : table) {
          ordered_json w = ordered_json::array();
          for (auto t : r.witness_low_tiles) w.push_back(domino::to_string(t));
          rows.push_back({{"k", r.k},
                          {"board", r.min_board_sum},
                          {"residual", r.min_winner_residual},
                          {"max_possible", r.max_possible},
                          {"witness", w}});
        }
        std::cout << rows.dump(2) << "\n";
      } else {
        std::cout << "k board residual max_possible witness\n";
        for (const auto& r : table) {
          std::cout << r.k << " " << r.min_board_sum << " "
                    << r.min_winner_residual << " " << r.max_possible << " ";
          for (auto t : r.witness_low_tiles)
            std::cout << domino::to_string(t) << " ";
          std::cout << "\n";
        }
      }
      return kExitOk;
    }

    if (*hand_cmd) {
      bool possible = domino::exists_hand_avoiding(values);
      if (as_json)
        std::cout << ordered_json{{"values", values}, {"possible", possible}}
                         .dump(2)
                  << "\n";
      else
        std::cout << (possible ? "possible" : "impossible") << "\n";
      return kExitOk;
    }

    if (*search_cmd) {
      domino::SearchOptions opts;
      opts.pruning = parse_toggles(prune_names);
      opts.node_budget = budget;
      opts.threads = threads;
      auto result = domino::search_blocked_score(target, opts);
      if (as_json) {
        ordered_json j{{"target", target},
                       {"verdict", domino::to_string(result.verdict)},
                       {"frames", result.stats.frames_searched},
                       {"nodes", result.stats.nodes}};
        if (result.witness)
          j["witness"] = ordered_json::parse(
              domino::serialize_record(*result.witness));
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "target=" << target
                  << " verdict=" << domino::to_string(result.verdict)
                  << " frames=" << result.stats.frames_searched
                  << " nodes=" << result.stats.nodes << "\n";
      }
      return result.verdict == domino::Verdict::BudgetExceeded
                 ? kExitVerificationFailure
                 : kExitOk;
    }

    if (*prove_cmd) {
      domino::SearchOptions opts;
      opts.node_budget = no_budget ? 0 : budget;
      opts.threads = threads;
      auto result = domino::prove_max_blocked_score(opts);
      std::string cert_path = out_dir + "/certificate.json";
      write_file(cert_path, domino::certification_report_json(result));
      std::string witness_path;
      if (result.sat.witness) {
        witness_path =
            out_dir + "/witness_" + std::to_string(result.max_score) + ".json";
        write_file(witness_path, domino::serialize_record(*result.sat.witness));
      }
      if (as_json) {
        ordered_json j{{"max", result.max_score},
                       {"certificate", cert_path},
                       {"witness", witness_path}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "MAX=" << result.max_score << "\n"
                  << "certificate: " << cert_path << "\n"
                  << "witness: " << witness_path << "\n";
      }
      return result.max_score > 0 ? kExitOk : kExitVerificationFailure;
    }

    if (*oracle_cmd) {
      if (max_pip > 3) {
        std::cerr << "oracle supports --max-pip 2 or 3\n";
        return kExitUsage;
      }
      auto rules = domino::Rules::reduced_two_player(max_pip);
      auto brute_res = domino::exhaustive_blocked_census(rules);
      auto prover_res = domino::prover_blocked_census(rules);
      bool equal =
          brute_res.max_winning_score == prover_res.max_winning_score &&
          brute_res.blocked_config_count == prover_res.blocked_config_count;
      if (as_json) {
        ordered_json j{
            {"max_pip", max_pip},
            {"oracle",
             {{"max", brute_res.max_winning_score},
              {"configs", brute_res.blocked_config_count}}},
            {"prover",
             {{"max", prover_res.max_winning_score},
              {"configs", prover_res.blocked_config_count}}},
            {"equal", equal}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "oracle: max=" << brute_res.max_winning_score
                  << " configs=" << brute_res.blocked_config_count
                  << "\nprover: max=" << prover_res.max_winning_score
                  << " configs=" << prover_res.blocked_config_count << "\n"
                  << (equal ? "EQUAL" : "MISMATCH") << "\n";
      }
      return equal ? kExitOk : kExitVerificationFailure;
    }

    if (*prune_cmd) {
      domino::PruneRule rule;
      if (rule_name == "p1")
        rule = domino::PruneRule::P1;
      else if (rule_name == "p2")
        rule = domino::PruneRule::P2;
      else if (rule_name == "p3")
        rule = domino::PruneRule::P3;
      else if (rule_name == "s")
        rule = domino::PruneRule::Symmetry;
      else {
        std::cerr << "unknown rule '" << rule_name << "'\n";
        return kExitUsage;
      }
      auto v = domino::validate_pruning(rule);
      if (as_json) {
        ordered_json j{{"rule", domino::to_string(v.rule)},
                       {"scope", v.scope},
                       {"identical", v.identical},
                       {"detail", v.detail}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << domino::to_string(v.rule) << " [" << v.scope
                  << "]: " << (v.identical ? "IDENTICAL" : "MISMATCH") << "\n"
                  << v.detail << "\n";
      }
      return v.identical ? kExitOk : kExitVerificationFailure;
    }
  } catch (const domino::RecordError& e) {
    std::cerr << "record error: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const domino::EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
