// mbg: command-line front end for the diameter game toolkit.
//
// exit codes: 0 ok, 1 bad arguments or config, 2 over cap, 3 invariant
// violation or replay mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mbg/box.hpp"
#include "mbg/degree.hpp"
#include "mbg/diameter2.hpp"
#include "mbg/diameter_d.hpp"
#include "mbg/errors.hpp"
#include "mbg/expansion.hpp"
#include "mbg/harness.hpp"
#include "mbg/solver.hpp"
#include "mbg/transcript.hpp"

using nlohmann::json;
using namespace mbg;

namespace {

constexpr int kOk = 0, kBadArgs = 1, kOverCap = 2, kFailed = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("mbg");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LOG_LEVEL")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("LOG_LEVEL='{}' not recognised, using warn", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParameters, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Player side_of(const std::string& s) { return parse_player(s); }

struct SolveArgs {
  int n = 0, a = 1, b = 1, d = 2;
  std::string first = "maker";
  std::size_t edge_cap = 15;
  bool plain = false, no_cutoffs = false;
};

int cmd_solve(const SolveArgs& o) {
  SolveOptions opt;
  opt.edge_cap = o.edge_cap;
  opt.canonicalize = !o.plain;
  opt.cutoffs = !o.no_cutoffs;
  const Player first = side_of(o.first);
  spdlog::info("solving D_{}({}:{}) on K_{}", o.d, o.a, o.b, o.n);
  const auto r = solve(o.n, o.a, o.b, o.d, first, opt);
  std::cout << solve_json(o.n, o.a, o.b, o.d, first, r).dump() << '\n';
  return kOk;
}

struct SimArgs {
  std::string config, csv, transcripts;
  int workers = -1;
};

int cmd_simulate(const SimArgs& o) {
  json j;
  try {
    j = json::parse(read_file(o.config));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidParameters, o.config + ": " + e.what());
  }
  auto config = ExperimentConfig::from_json(j);
  if (!o.csv.empty()) config.csv_path = o.csv;
  if (!o.transcripts.empty()) config.transcript_dir = o.transcripts;
  if (o.workers >= 0) config.workers = o.workers;
  spdlog::info("experiment '{}'", config.name);
  const auto result = run_experiment(config);
  write_outputs(config, result);
  json wins = {{"Maker", 0}, {"Breaker", 0}, {"fault", 0}};
  for (const auto& r : result.rows) wins[r.winner] = wins[r.winner].get<int>() + 1;
  std::cout << json{{"name", config.name},
                    {"matches", result.rows.size()},
                    {"wins", wins},
                    {"invariant_violations", result.violations()},
                    {"csv", config.csv_path}}
                   .dump()
            << '\n';
  if (result.faults() > 0) spdlog::warn("{} matches ended in a strategy fault", result.faults());
  if (result.violations() > 0) {
    spdlog::error("{} invariant violations", result.violations());
    return kFailed;
  }
  return kOk;
}

struct VerifyArgs {
  int n = 4, a = 1, b = 1, d = 2;
  std::string strategy = "pairing", side = "breaker", first = "maker";
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& o) {
  if (o.n < 2 || o.a < 1 || o.b < 1 || o.d < 1) throw Error(ErrorCode::InvalidParameters, "need n >= 2, a, b, d >= 1");
  const auto scripted = make_strategy(StrategySpec::parse(o.strategy), o.n, o.a, o.b, o.seed);
  const Player side = side_of(o.side);
  GameState start(o.n, o.a, o.b, side_of(o.first));
  Judge<GameState> judge = [&](const GameState& s, const Strategy&) -> std::optional<bool> {
    const auto decided = diameter_decided(s, o.d);
    if (!decided && !s.exhausted()) return std::nullopt;
    const Player winner = decided ? *decided : (diameter_at_most(s.maker_graph(), o.d) ? Player::Maker : Player::Breaker);
    return winner == side;
  };
  const auto r = verify_one_sided(start, *scripted, side, judge);
  json line = json::array();
  for (const auto& m : r.counterexample) {
    json edges = json::array();
    for (Position p : m.positions) edges.push_back({start.edge(p).u, start.edge(p).v});
    line.push_back({{"player", std::string(to_string(m.player))}, {"edges", edges}});
  }
  std::cout << json{{"n", o.n},      {"a", o.a},          {"b", o.b},      {"d", o.d},
                    {"strategy", o.strategy}, {"side", o.side}, {"holds", r.holds}, {"states", r.states},
                    {"counterexample", line}}
                   .dump()
            << '\n';
  return kOk;
}

int cmd_replay(const std::vector<std::string>& files) {
  bool all = true;
  for (const auto& f : files) {
    const auto t = Transcript::from_jsonl(read_file(f));
    const auto r = replay_transcript(t);
    all = all && r.matches_footer;
    std::cout << json{{"file", f},
                      {"verdict", r.verdict},
                      {"winner", r.verdict ? "Maker" : "Breaker"},
                      {"recorded_verdict", t.verdict},
                      {"matches", r.matches_footer}}
                     .dump()
              << '\n';
    if (!r.matches_footer) spdlog::error("{}: replayed verdict differs from the recorded one", f);
  }
  return all ? kOk : kFailed;
}

int cmd_strategies() {
  for (const auto& s : strategy_registry()) {
    std::cout << json{{"id", s.id}, {"side", s.side}, {"stochastic", s.stochastic}, {"params", s.params},
                      {"summary", s.summary}}
                     .dump()
              << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Maker-Breaker diameter games: exact solving, strategies and experiments"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "exact game value of D_d(a:b) on K_n");
  solve_cmd->add_option("--n", solve_args.n, "vertices")->required();
  solve_cmd->add_option("--a", solve_args.a, "Maker bias");
  solve_cmd->add_option("--b", solve_args.b, "Breaker bias");
  solve_cmd->add_option("--d", solve_args.d, "target diameter");
  solve_cmd->add_option("--first", solve_args.first, "maker or breaker");
  solve_cmd->add_option("--edge-cap", solve_args.edge_cap, "largest board searched");
  solve_cmd->add_flag("--plain", solve_args.plain, "no canonicalisation");
  solve_cmd->add_flag("--no-cutoffs", solve_args.no_cutoffs, "search to exhaustion");

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "run an experiment config");
  sim_cmd->add_option("config", sim_args.config, "experiment JSON")->required();
  sim_cmd->add_option("--csv", sim_args.csv, "override the CSV path");
  sim_cmd->add_option("--transcripts", sim_args.transcripts, "override the transcript directory");
  sim_cmd->add_option("--workers", sim_args.workers, "worker threads (0: all cores)");

  std::string calc;
  double p_n = 0, p_eps = 0.1, p_a = 1, p_b = 1, p_r1 = 6, p_mult = 4;
  int p_d = 3, p_r = 1, p_s = 1, p_k = 1, p_delta = 3, p_delta_min = 2, p_delta_max = 10, p_m_min = 2, p_m_max = 20;
  auto* params_cmd = app.add_subcommand("params", "parameter calculators");
  params_cmd->add_option("calculator", calc,
                         "d2-maker | d2-breaker | dd | dd-plan | dd-breaker | dd-breaker-a2 | mindeg | exp | "
                         "claim2 | block-budget | box")
      ->required();
  params_cmd->add_option("--n", p_n);
  params_cmd->add_option("--eps", p_eps);
  params_cmd->add_option("--a", p_a);
  params_cmd->add_option("--b", p_b);
  params_cmd->add_option("--d", p_d);
  params_cmd->add_option("--r", p_r);
  params_cmd->add_option("--s", p_s);
  params_cmd->add_option("--k", p_k);
  params_cmd->add_option("--delta", p_delta);
  params_cmd->add_option("--delta-min", p_delta_min);
  params_cmd->add_option("--delta-max", p_delta_max);
  params_cmd->add_option("--m-min", p_m_min);
  params_cmd->add_option("--m-max", p_m_max);
  params_cmd->add_option("--r1-constant", p_r1);
  params_cmd->add_option("--multiplier", p_mult);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check a scripted strategy against every opponent line");
  verify_cmd->add_option("--n", verify_args.n)->required();
  verify_cmd->add_option("--a", verify_args.a);
  verify_cmd->add_option("--b", verify_args.b);
  verify_cmd->add_option("--d", verify_args.d);
  verify_cmd->add_option("--strategy", verify_args.strategy, "registry id");
  verify_cmd->add_option("--side", verify_args.side, "side the strategy plays");
  verify_cmd->add_option("--first", verify_args.first);
  verify_cmd->add_option("--seed", verify_args.seed);

  std::vector<std::string> replay_files;
  auto* replay_cmd = app.add_subcommand("replay", "rebuild transcripts and re-derive their verdicts");
  replay_cmd->add_option("transcripts", replay_files, "transcript .jsonl files")->required();

  auto* list_cmd = app.add_subcommand("strategies", "list the strategy registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadArgs;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args);
    if (*sim_cmd) return cmd_simulate(sim_args);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*replay_cmd) return cmd_replay(replay_files);
    if (*list_cmd) return cmd_strategies();
    if (*params_cmd) {
      const int n = static_cast<int>(p_n);
      json out;
      if (calc == "d2-maker") {
        out = d2_maker_params(p_n).to_json();
      } else if (calc == "d2-breaker") {
        out = d2_breaker_params(n, p_eps).to_json();
      } else if (calc == "dd") {
        out = dd_params(p_n, p_d, p_r1).to_json();
      } else if (calc == "dd-plan") {
        out = dd_plan(n, p_d, p_b).to_json();
      } else if (calc == "dd-breaker") {
        const auto bb = dd_breaker_bias(n, p_d, p_mult);
        out = {{"n", n}, {"d", p_d}, {"multiplier", p_mult}, {"b1", bb.b1}, {"b", bb.b}, {"b2", bb.b2}};
      } else if (calc == "dd-breaker-a2") {
        out = {{"n", n}, {"d", p_d}, {"b", dd_breaker_a2_bias(n, p_d)}};
      } else if (calc == "mindeg") {
        out = mindeg_params(n, p_a, p_b).to_json();
      } else if (calc == "exp") {
        out = exp_condition(n, p_r, p_s, p_a, p_b).to_json();
      } else if (calc == "claim2") {
        out = {{"delta", {p_delta_min, p_delta_max}},
               {"m", {p_m_min, p_m_max}},
               {"holds", claim2_check({p_delta_min, p_delta_max}, {p_m_min, p_m_max})}};
      } else if (calc == "block-budget") {
        out = {{"delta", p_delta}, {"d", p_d}, {"budget", block_budget(p_delta, p_d).budget.str()}};
      } else if (calc == "box") {
        const int a = static_cast<int>(p_a), b = static_cast<int>(p_b);
        out = {{"r", p_r}, {"k", p_k}, {"a", a}, {"b", b}, {"holds", box_game_condition(p_r, p_k, a, b)}};
      } else {
        throw Error(ErrorCode::InvalidParameters, "unknown calculator '" + calc + "'");
      }
      std::cout << out.dump() << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    std::cout << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return e.code() == ErrorCode::OverCap || e.code() == ErrorCode::FamilyTooLarge ? kOverCap : kBadArgs;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kBadArgs;
  }
  return kBadArgs;
}
