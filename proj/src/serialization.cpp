#include "rendezvous/serialization.hpp"

#include <map>

#include "rendezvous/error.hpp"

namespace rendezvous {

namespace {

Error parse_error(const std::string& why) { return Error(ErrorKind::Parse, why); }

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw parse_error(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

// Site-keyed object ("1", "2", ...) to a dense 1..N vector.
template <class T>
std::vector<T> site_map(const Json& obj, const char* key) {
  if (!obj.is_object()) throw parse_error(std::string("'") + key + "' must be an object");
  std::map<int, T> by_site;
  for (const auto& [k, v] : obj.items()) {
    int site = 0;
    try {
      std::size_t used = 0;
      site = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::logic_error&) {
      throw parse_error("site key '" + k + "' is not an integer");
    }
    try {
      by_site[site] = v.template get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw parse_error("site " + k + ": " + e.what());
    }
  }
  std::vector<T> out;
  int expect = 1;
  for (auto& [site, v] : by_site) {
    if (site != expect) {
      throw parse_error(std::string("'") + key + "' must cover sites 1..N; missing " +
                        std::to_string(expect));
    }
    out.push_back(std::move(v));
    ++expect;
  }
  return out;
}

}  // namespace

Json to_json(const GameConfig& cfg) {
  return Json{{"e", cfg.meet_on_edges ? 1 : 0},
              {"s", cfg.same_start_allowed ? 1 : 0},
              {"variant", cfg.variant == SameStartVariant::CheckFirst ? "first" : "later"}};
}

GameConfig game_config_from_json(const Json& j) {
  GameConfig cfg;
  if (j.contains("e")) cfg.meet_on_edges = field<int>(j, "e") != 0;
  if (j.contains("s")) cfg.same_start_allowed = field<int>(j, "s") != 0;
  if (j.contains("variant")) {
    const auto v = field<std::string>(j, "variant");
    if (v == "first") {
      cfg.variant = SameStartVariant::CheckFirst;
    } else if (v == "later") {
      cfg.variant = SameStartVariant::CheckLater;
    } else {
      throw parse_error("variant must be 'first' or 'later'");
    }
  }
  return cfg;
}

Json to_json(const Strategy& s) {
  if (const auto* c = std::get_if<ClassicalStrategy>(&s)) {
    if (c->is_deterministic()) {
      Json moves = Json::object();
      for (Vertex v = 1; v <= c->size(); ++v) moves[std::to_string(v)] = c->move(v);
      return Json{{"kind", "deterministic"}, {"moves", moves}};
    }
    Json dist = Json::object();
    for (Vertex v = 1; v <= c->size(); ++v) {
      const auto& p = c->move_distribution(v);
      dist[std::to_string(v)] = std::vector<double>(p.data(), p.data() + p.size());
    }
    return Json{{"kind", "randomized"}, {"dist", dist}};
  }
  if (const auto* q = std::get_if<QubitStrategy>(&s)) {
    return Json{{"kind", "qubit"}, {"angles", q->angles}};
  }
  const QutritStrategy canon = canonicalize(std::get<QutritStrategy>(s));
  Json angles = Json::array();
  for (const auto& t : canon.triples()) angles.push_back({t.alpha, t.beta, t.gamma});
  Json j{{"kind", "qutrit"}, {"angles", angles}};
  if (canon.tied()) j["slots"] = canon.slots();
  return j;
}

Strategy strategy_from_json(const Json& j, int arity) {
  if (!j.is_object()) throw parse_error("strategy must be a JSON object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "deterministic") {
    if (!j.contains("moves")) throw parse_error("missing key 'moves'");
    return ClassicalStrategy::deterministic(site_map<int>(j.at("moves"), "moves"), arity);
  }
  if (kind == "randomized") {
    if (!j.contains("dist")) throw parse_error("missing key 'dist'");
    const auto rows = site_map<std::vector<double>>(j.at("dist"), "dist");
    std::vector<Eigen::VectorXd> dist;
    for (const auto& r : rows) {
      dist.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())));
    }
    return ClassicalStrategy::randomized(std::move(dist));
  }
  if (kind == "qubit") return QubitStrategy{field<std::vector<double>>(j, "angles")};
  if (kind == "qutrit") {
    const auto raw = field<std::vector<std::vector<double>>>(j, "angles");
    std::vector<EulerAnglesd> triples;
    for (const auto& t : raw) {
      if (t.size() != 3) throw parse_error("qutrit angles must be [alpha,beta,gamma] triples");
      triples.push_back({t[0], t[1], t[2]});
    }
    if (j.contains("slots")) {
      return QutritStrategy(std::move(triples), field<std::vector<int>>(j, "slots"));
    }
    return QutritStrategy(std::move(triples));
  }
  throw parse_error("unknown strategy kind '" + kind + "'");
}

Json to_json(const OptimizationResult& r, const Graph& g, const GameConfig& cfg,
             const OptimizerConfig& oc) {
  Json angles = Json::object();
  for (Vertex v = 1; v <= r.best.size(); ++v) {
    const auto& t = r.best.at(v);
    angles[std::to_string(v)] = {t.alpha, t.beta, t.gamma};
  }
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"restart", t.index},
                     {"start_objective", t.start_objective},
                     {"final_objective", t.final_objective},
                     {"evals", t.evals}});
  }
  const char* tie = oc.tie == TieMode::Auto ? "auto" : oc.tie == TieMode::On ? "on" : "off";
  return Json{{"graph", g.name()},
              {"config", to_json(cfg)},
              {"seed", oc.seed},
              {"restarts", oc.restarts},
              {"max_evals", oc.max_evals},
              {"tie_components", tie},
              {"tied", r.best.tied()},
              {"objective", r.best_objective},
              {"best_restart", r.best_restart},
              {"evaluations", r.total_evals},
              {"angles", angles},
              {"strategy", to_json(Strategy(r.best))},
              {"trace", trace}};
}

Json to_json(const SimResult& r) {
  Json conv = Json::array();
  for (const auto& c : r.convergence) {
    conv.push_back({{"log2_trials", c.log2_trials},
                    {"trials", c.trials},
                    {"win_fraction", c.win_fraction}});
  }
  return Json{{"trials", r.trials},
              {"wins", r.wins},
              {"win_fraction", r.win_fraction},
              {"seed", r.seed},
              {"discarded_shots", r.discarded_shots},
              {"invalid_shots", r.invalid_shots},
              {"convergence", conv}};
}

Json to_json(const NoiseParams& noise) {
  return Json{{"p_gate", noise.p_gate},
              {"n_gates", noise.n_gates},
              {"p_circ", circuit_failure_probability(noise)}};
}

}  // namespace rendezvous
