#include "mbg/transcript.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mbg/errors.hpp"

namespace mbg {

using nlohmann::json;

bool diameter_at_most(const Graph& g, int d) {
  const int n = g.order();
  if (n < 2) return true;
  if (g.size() + 1 < static_cast<std::size_t>(n)) return false;
  for (Vertex v = 0; v < n; ++v) {
    const auto layers = bfs_layers(g, v, d);
    std::size_t reached = 0;
    for (const auto& layer : layers) reached += layer.size();
    if (reached < static_cast<std::size_t>(n)) return false;
  }
  return true;
}

bool Property::holds(const Graph& maker) const {
  switch (kind) {
    case Kind::Diameter: return mbg::diameter_at_most(maker, first);
    case Kind::MinDegree: return degree_profile(maker).min >= first;
    case Kind::Expansion: return has_expansion(maker, first, second);
    case Kind::None: return false;
  }
  return false;
}

std::string Property::id() const {
  switch (kind) {
    case Kind::Diameter: return "diameter:" + std::to_string(first);
    case Kind::MinDegree: return "mindeg:" + std::to_string(first);
    case Kind::Expansion: return "expansion:" + std::to_string(first) + ":" + std::to_string(second);
    case Kind::None: return "none";
  }
  return "none";
}

Property Property::parse(std::string_view id) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : id) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  try {
    if (parts[0] == "none" && parts.size() == 1) return none();
    if (parts[0] == "diameter" && parts.size() == 2) return diameter_at_most(std::stoi(parts[1]));
    if (parts[0] == "mindeg" && parts.size() == 2) return min_degree_at_least(std::stoi(parts[1]));
    if (parts[0] == "expansion" && parts.size() == 3) {
      return expansion(std::stoi(parts[1]), std::stoi(parts[2]));
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::BadFormat, "unknown property id '" + std::string(id) + "'");
}

std::vector<std::string> Transcript::flags() const {
  std::set<std::string> names;
  for (const auto& a : annotations) {
    if (a.label == "flag") names.insert(a.data.at("name").get<std::string>());
  }
  return {names.begin(), names.end()};
}

int Transcript::violations() const {
  return static_cast<int>(std::count_if(annotations.begin(), annotations.end(),
                                        [](const Annotation& a) { return a.label == "violation"; }));
}

namespace {

json annotation_json(const Annotation& a) {
  return {{"round", a.round}, {"player", to_string(a.player)}, {"label", a.label}, {"data", a.data}};
}

Annotation annotation_from(const json& j) {
  return Annotation{j.at("round").get<int>(), parse_player(j.at("player").get<std::string>()),
                    j.at("label").get<std::string>(), j.at("data")};
}

}  // namespace

std::string Transcript::to_jsonl() const {
  std::ostringstream out;
  json header = {{"type", "header"},   {"n", n},
                 {"a", a},             {"b", b},
                 {"first", to_string(first)},
                 {"maker", maker_id},  {"breaker", breaker_id},
                 {"seed", seed},       {"property", property.id()}};
  out << header.dump() << '\n';
  for (const auto& c : claims) {
    json edges = json::array();
    for (const Edge& e : c.edges) edges.push_back({e.u, e.v});
    json line = {{"type", "claim"}, {"turn", c.turn}, {"player", to_string(c.player)}, {"edges", edges}};
    out << line.dump() << '\n';
  }
  json notes = json::array();
  for (const auto& a : annotations) notes.push_back(annotation_json(a));
  json footer = {{"type", "footer"},
                 {"verdict", verdict ? "holds" : "fails"},
                 {"winner", to_string(winner())},
                 {"rounds", rounds},
                 {"early_stop", early_stop},
                 {"annotations", notes},
                 {"fault", nullptr}};
  if (fault) {
    footer["fault"] = {{"player", to_string(fault->player)},
                       {"strategy", fault->strategy},
                       {"message", fault->message}};
  }
  out << footer.dump() << '\n';
  return out.str();
}

Transcript Transcript::from_jsonl(std::string_view text) {
  Transcript t;
  bool saw_header = false;
  bool saw_footer = false;
  std::istringstream in{std::string(text)};
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        t.n = j.at("n").get<int>();
        t.a = j.at("a").get<int>();
        t.b = j.at("b").get<int>();
        t.first = parse_player(j.at("first").get<std::string>());
        t.maker_id = j.at("maker").get<std::string>();
        t.breaker_id = j.at("breaker").get<std::string>();
        t.seed = j.at("seed").get<std::uint64_t>();
        t.property = Property::parse(j.at("property").get<std::string>());
        saw_header = true;
      } else if (type == "claim") {
        ClaimRecord c;
        c.turn = j.at("turn").get<int>();
        c.player = parse_player(j.at("player").get<std::string>());
        for (const auto& e : j.at("edges")) c.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        t.claims.push_back(std::move(c));
      } else if (type == "footer") {
        t.verdict = j.at("verdict").get<std::string>() == "holds";
        t.rounds = j.at("rounds").get<int>();
        t.early_stop = j.at("early_stop").get<bool>();
        for (const auto& a : j.at("annotations")) t.annotations.push_back(annotation_from(a));
        if (!j.at("fault").is_null()) {
          const auto& f = j.at("fault");
          t.fault = StrategyFaultInfo{parse_player(f.at("player").get<std::string>()),
                                      f.at("strategy").get<std::string>(),
                                      f.at("message").get<std::string>()};
        }
        saw_footer = true;
      } else {
        throw Error(ErrorCode::BadFormat, "unknown record type '" + type + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadFormat, e.what());
  }
  if (!saw_header || !saw_footer) throw Error(ErrorCode::BadFormat, "transcript missing header or footer");
  return t;
}

ReplayResult replay_transcript(const Transcript& t) {
  GameState state(t.n, t.a, t.b, t.first);
  for (const auto& c : t.claims) state.apply_claim(c.player, c.edges);
  const bool verdict = t.property.holds(state.maker_graph());
  return ReplayResult{std::move(state), verdict, verdict == t.verdict};
}

Transcript run_match(GameState state, Strategy& maker, Strategy& breaker, const Property& property,
                     const MatchOptions& options) {
  if (!state.log().empty()) throw Error(ErrorCode::InvalidParameters, "run_match needs a fresh state");

  Transcript t;
  t.n = state.n();
  t.a = state.a();
  t.b = state.b();
  t.first = state.first();
  t.maker_id = maker.id();
  t.breaker_id = breaker.id();
  t.seed = options.seed;
  t.property = property;
  maker.set_invariant_checks(options.check_invariants);
  breaker.set_invariant_checks(options.check_invariants);

  int turn = 0;
  while (!state.exhausted()) {
    if (options.early_stop && property.kind != Property::Kind::None &&
        property.holds(state.maker_graph())) {
      t.early_stop = true;
      break;
    }
    const Player side = state.to_move();
    Strategy& strategy = side == Player::Maker ? maker : breaker;
    const int round = state.turns_taken(Player::Maker) + (side == Player::Maker ? 1 : 0);
    std::vector<Position> picks;
    try {
      picks = strategy.select(state);
      state.apply_claim_positions(side, picks);
    } catch (const Error& e) {
      for (auto& a : strategy.take_notes()) {
        a.round = round;
        a.player = side;
        t.annotations.push_back(std::move(a));
      }
      t.fault = StrategyFaultInfo{side, strategy.id(), e.what()};
      break;
    }
    for (auto& a : strategy.take_notes()) {
      a.round = round;
      a.player = side;
      t.annotations.push_back(std::move(a));
    }
    ClaimRecord rec{++turn, side, {}};
    rec.edges.reserve(picks.size());
    for (Position p : picks) rec.edges.push_back(state.edge(p));
    t.claims.push_back(std::move(rec));
  }
  t.rounds = state.turns_taken(Player::Maker);
  t.verdict = property.holds(state.maker_graph());
  return t;
}

}  // namespace mbg
