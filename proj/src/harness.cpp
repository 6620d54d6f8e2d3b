#include "mbg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "mbg/degree.hpp"
#include "mbg/diameter2.hpp"
#include "mbg/diameter_d.hpp"
#include "mbg/errors.hpp"
#include "mbg/expansion.hpp"
#include "mbg/heuristics.hpp"

namespace mbg {

using nlohmann::json;

// registry ------------------------------------------------------------------------

StrategySpec StrategySpec::parse(const json& j) {
  StrategySpec s;
  if (j.is_string()) {
    s.id = j.get<std::string>();
  } else if (j.is_object() && j.contains("id") && j.at("id").is_string()) {
    s.id = j.at("id").get<std::string>();
    for (const auto& [k, v] : j.items()) {
      if (k != "id") s.params[k] = v;
    }
  } else {
    throw Error(ErrorCode::InvalidParameters, "strategy must be an id or an object with an id: " + j.dump());
  }
  if (!find_strategy(s.id)) throw Error(ErrorCode::InvalidParameters, "unknown strategy id '" + s.id + "'");
  for (const auto& [k, v] : s.params.items()) {
    const auto& allowed = find_strategy(s.id)->params;
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw Error(ErrorCode::InvalidParameters, "strategy '" + s.id + "' has no parameter '" + k + "'");
    }
  }
  return s;
}

json StrategySpec::to_json() const {
  if (params.empty()) return id;
  json j = params;
  j["id"] = id;
  return j;
}

const std::vector<StrategyInfo>& strategy_registry() {
  static const std::vector<StrategyInfo> registry = {
      {"random", "either", true, {}, "uniformly random free edges"},
      {"lowest", "either", false, {}, "lowest-index free edges"},
      {"greedy-degree", "maker", false, {}, "edge at the vertex of smallest Maker degree"},
      {"two-path-greedy", "maker", false, {}, "edge closing the most new distance-2 pairs"},
      {"greedy-path", "maker", false, {}, "shortens the path between Breaker's first edge"},
      {"mindeg-maker", "either", false, {}, "degree-game potential strategy"},
      {"flooding", "breaker", false, {}, "floods one vertex untouched by Maker"},
      {"esb-degree", "breaker", false, {}, "takes the edges the degree potential values most"},
      {"d2-simple-maker", "maker", false, {}, "degree game to ceil((n-1)/2), for b < a"},
      {"exp-maker", "maker", false, {"r", "s", "virtual_b"}, "potential strategy for EXP(r,s)"},
      {"pairing", "breaker", false, {}, "pairing strategy keeping one pair at distance >= 3"},
      {"d2-breaker", "breaker", false, {}, "flood a centre, then the box game on its spokes"},
      {"d2-maker", "maker", false, {"game3_cap"}, "four-subgame diameter-2 Maker"},
      {"dd-maker", "maker", false, {"d"}, "round-robin degree/expansion Maker for diameter d"},
      {"dd-breaker-a1", "breaker", false, {"d", "b1", "multiplier"}, "degree capping plus ball blocking"},
      {"dd-breaker-a2", "breaker", false, {"d"}, "degree capping for Maker bias >= 2"},
  };
  return registry;
}

const StrategyInfo* find_strategy(const std::string& id) {
  const auto& r = strategy_registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const StrategyInfo& s) { return s.id == id; });
  return it == r.end() ? nullptr : &*it;
}

namespace {

template <class T>
T param(const StrategySpec& spec, const char* key, T fallback) {
  if (!spec.params.contains(key)) return fallback;
  try {
    return spec.params.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidParameters, spec.id + "." + key + " has the wrong type");
  }
}

template <class T>
T required(const StrategySpec& spec, const char* key) {
  if (!spec.params.contains(key)) throw Error(ErrorCode::InvalidParameters, spec.id + " needs '" + key + "'");
  return param<T>(spec, key, T{});
}

}  // namespace

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int n, int, int, std::uint64_t seed) {
  const std::string& id = spec.id;
  if (id == "random") return std::make_unique<RandomPlayer>(seed);
  if (id == "lowest") return std::make_unique<LowestPlayer>();
  if (id == "greedy-degree") return std::make_unique<GreedyDegreeMaker>();
  if (id == "two-path-greedy") return std::make_unique<TwoPathGreedyMaker>();
  if (id == "greedy-path") return std::make_unique<GreedyPathMaker>();
  if (id == "mindeg-maker") return std::make_unique<MinDegMaker>();
  if (id == "flooding") return std::make_unique<FloodingBreaker>();
  if (id == "esb-degree") return std::make_unique<DegreeAdversary>();
  if (id == "d2-simple-maker") return std::make_unique<D2SimpleMaker>();
  if (id == "exp-maker") {
    return std::make_unique<ExpMaker>(required<int>(spec, "r"), required<int>(spec, "s"),
                                      param<double>(spec, "virtual_b", 0.0));
  }
  if (id == "pairing") return std::make_unique<PairingBreaker>();
  if (id == "d2-breaker") return std::make_unique<D2Breaker>();
  if (id == "d2-maker") {
    D2Maker::Options o;
    o.game3_cap = param<std::size_t>(spec, "game3_cap", o.game3_cap);
    return std::make_unique<D2Maker>(o);
  }
  if (id == "dd-maker") return std::make_unique<DdMaker>(required<int>(spec, "d"));
  if (id == "dd-breaker-a1") {
    const int d = required<int>(spec, "d");
    const int b1 = param<int>(spec, "b1", dd_breaker_bias(n, d, param<double>(spec, "multiplier", 4.0)).b1);
    return std::make_unique<DdBreakerA1>(d, b1);
  }
  if (id == "dd-breaker-a2") return std::make_unique<DdBreakerA2>(required<int>(spec, "d"));
  throw Error(ErrorCode::InvalidParameters, "unknown strategy id '" + id + "'");
}

// seeding -----------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t match_stream(std::uint64_t seed, std::size_t match_index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(match_index));
}

// config -------------------------------------------------------------------------------

int BiasRule::resolve(int n) const {
  if (fixed) return *fixed;
  try {
    if (from == "d2-breaker") return d2_breaker_params(n, params.value("epsilon", 0.1)).b;
    if (from == "dd-breaker") return dd_breaker_bias(n, params.at("d").get<int>(), params.value("multiplier", 4.0)).b;
    if (from == "dd-breaker-a2") return dd_breaker_a2_bias(n, params.at("d").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParameters, "bias rule '" + from + "': " + e.what());
  }
  throw Error(ErrorCode::InvalidParameters, "unknown bias rule '" + from + "'");
}

namespace {

std::vector<int> parse_ns(const json& j) {
  std::vector<int> out;
  if (j.is_number_integer()) {
    out.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& x : j) out.push_back(x.get<int>());
  } else if (j.is_object()) {
    const int from = j.at("from").get<int>(), to = j.at("to").get<int>(), step = j.value("step", 1);
    if (step < 1) throw Error(ErrorCode::InvalidParameters, "n step must be positive");
    for (int n = from; n <= to; n += step) out.push_back(n);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidParameters, "no board sizes");
  for (int n : out) {
    if (n < 2) throw Error(ErrorCode::InvalidParameters, "board size must be at least 2");
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const json& j) {
  std::vector<std::uint64_t> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(x.get<std::uint64_t>());
  } else if (j.is_object()) {
    const auto start = j.value("start", std::uint64_t{0});
    const auto count = j.at("count").get<std::uint64_t>();
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(start + i);
  } else {
    throw Error(ErrorCode::InvalidParameters, "seeds must be a list or {start, count}");
  }
  return out;
}

std::vector<StrategySpec> parse_specs(const json& j, const char* what) {
  std::vector<StrategySpec> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(StrategySpec::parse(x));
  } else {
    out.push_back(StrategySpec::parse(j));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidParameters, std::string("no ") + what);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  static const std::vector<std::string> keys = {
      "name",  "property", "n",           "a",          "b",         "first",   "makers", "breakers",
      "seeds", "repetitions", "early_stop", "check_invariants", "workers", "output", "comment"};
  ExperimentConfig c;
  try {
    for (const auto& [k, v] : j.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw Error(ErrorCode::InvalidParameters, "unknown config key '" + k + "'");
      }
    }
    c.name = j.value("name", std::string("experiment"));
    c.property = Property::parse(j.value("property", std::string("diameter:2")));
    c.ns = parse_ns(j.at("n"));
    c.a = j.value("a", 1);
    const json& b = j.at("b");
    if (b.is_number_integer()) {
      c.b.fixed = b.get<int>();
    } else {
      c.b.from = b.at("from").get<std::string>();
      for (const auto& [k, v] : b.items()) {
        if (k != "from") c.b.params[k] = v;
      }
    }
    c.first = parse_player(j.value("first", std::string("maker")));
    c.makers = parse_specs(j.at("makers"), "makers");
    c.breakers = parse_specs(j.at("breakers"), "breakers");
    if (j.contains("seeds")) c.seeds = parse_seeds(j.at("seeds"));
    c.repetitions = j.value("repetitions", 1);
    c.early_stop = j.value("early_stop", true);
    c.check_invariants = j.value("check_invariants", false);
    c.workers = j.value("workers", 0);
    if (j.contains("output")) {
      c.csv_path = j.at("output").value("csv", std::string());
      c.transcript_dir = j.at("output").value("transcripts", std::string());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameters, std::string("bad config: ") + e.what());
  }
  if (c.a < 1 || c.repetitions < 1 || c.workers < 0) {
    throw Error(ErrorCode::InvalidParameters, "a, repetitions must be positive and workers non-negative");
  }
  bool stochastic = false;
  for (const auto* side : {&c.makers, &c.breakers}) {
    for (const auto& s : *side) stochastic = stochastic || find_strategy(s.id)->stochastic;
  }
  if (c.seeds.empty()) {
    if (stochastic) throw Error(ErrorCode::InvalidParameters, "stochastic strategies need a non-empty seed list");
    c.seeds = {0};
  }
  for (int n : c.ns) {
    if (c.b.resolve(n) < 1) throw Error(ErrorCode::InvalidParameters, "Breaker bias must be positive");
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json makers = json::array(), breakers = json::array();
  for (const auto& s : this->makers) makers.push_back(s.to_json());
  for (const auto& s : this->breakers) breakers.push_back(s.to_json());
  json b;
  if (this->b.fixed) {
    b = *this->b.fixed;
  } else {
    b = this->b.params;
    b["from"] = this->b.from;
  }
  return {{"name", name},
          {"property", property.id()},
          {"n", ns},
          {"a", a},
          {"b", b},
          {"first", std::string(to_string(first))},
          {"makers", makers},
          {"breakers", breakers},
          {"seeds", seeds},
          {"repetitions", repetitions},
          {"early_stop", early_stop},
          {"check_invariants", check_invariants},
          {"workers", workers},
          {"output", {{"csv", csv_path}, {"transcripts", transcript_dir}}}};
}

// runner ------------------------------------------------------------------------------------

int ExperimentResult::violations() const {
  int total = 0;
  for (const auto& r : rows) total += r.invariant_violations;
  return total;
}

int ExperimentResult::faults() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const MatchRow& r) { return r.winner == "fault"; }));
}

const std::string& csv_header() {
  static const std::string h = "match,seed,repetition,maker,breaker,n,a,b,winner,rounds,flags,invariant_violations";
  return h;
}

std::string to_csv(const std::vector<MatchRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    out << r.match << ',' << r.seed << ',' << r.repetition << ',' << r.maker << ',' << r.breaker << ',' << r.n << ','
        << r.a << ',' << r.b << ',' << r.winner << ',' << r.rounds << ',' << flags << ',' << r.invariant_violations
        << '\n';
  }
  return out.str();
}

namespace {

struct Job {
  std::uint64_t seed;
  int repetition;
  const StrategySpec* maker;
  const StrategySpec* breaker;
  int n;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c) {
  std::vector<Job> jobs;
  for (int n : c.ns)
    for (const auto& mk : c.makers)
      for (const auto& br : c.breakers)
        for (std::uint64_t seed : c.seeds)
          for (int rep = 0; rep < c.repetitions; ++rep) jobs.push_back({seed, rep, &mk, &br, n});

  ExperimentResult result;
  result.rows.resize(jobs.size());
  result.transcripts.resize(jobs.size());

  auto play = [&](std::size_t i) {
    const Job& job = jobs[i];
    const int b = c.b.resolve(job.n);
    const std::uint64_t stream = match_stream(job.seed, i);
    auto maker = make_strategy(*job.maker, job.n, c.a, b, splitmix64(stream));
    auto breaker = make_strategy(*job.breaker, job.n, c.a, b, splitmix64(stream + 1));
    MatchOptions o;
    o.seed = stream;
    o.early_stop = c.early_stop;
    o.check_invariants = c.check_invariants;
    Transcript t = run_match(GameState(job.n, c.a, b, c.first), *maker, *breaker, c.property, o);

    MatchRow& row = result.rows[i];
    row.match = i;
    row.seed = job.seed;
    row.repetition = job.repetition;
    row.maker = job.maker->id;
    row.breaker = job.breaker->id;
    row.n = job.n;
    row.a = c.a;
    row.b = b;
    row.winner = t.fault ? "fault" : std::string(to_string(t.winner()));
    row.rounds = t.rounds;
    row.flags = t.flags();
    row.invariant_violations = t.violations();
    result.transcripts[i] = std::move(t);
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(c.workers > 0 ? static_cast<std::size_t>(c.workers) : hw, jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) play(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size() && !failed; i = next++) {
        try {
          play(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

void write_outputs(const ExperimentConfig& c, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  auto open = [](const fs::path& p) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadFormat, "cannot write " + p.string());
    return out;
  };
  if (!c.csv_path.empty()) {
    auto out = open(c.csv_path);
    out << to_csv(result.rows);
    if (!out) throw Error(ErrorCode::BadFormat, "cannot write " + c.csv_path);
  }
  if (!c.transcript_dir.empty()) {
    for (std::size_t i = 0; i < result.transcripts.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "match-%05zu.jsonl", i);
      auto out = open(fs::path(c.transcript_dir) / name);
      out << result.transcripts[i].to_jsonl();
      if (!out) throw Error(ErrorCode::BadFormat, "cannot write transcript " + std::string(name));
    }
  }
}

}  // namespace mbg
