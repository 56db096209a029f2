#include <doctest.h>

#include "rendezvous/error.hpp"
#include "rendezvous/serialization.hpp"

using namespace rendezvous;

namespace {

ErrorKind kind_of(const Json& j, int arity = 2) {
  try {
    strategy_from_json(j, arity);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Lookup;
}

}  // namespace

TEST_CASE("game config JSON round trip") {
  for (bool e : {false, true})
    for (bool s : {false, true})
      for (auto v : {SameStartVariant::CheckFirst, SameStartVariant::CheckLater}) {
        const GameConfig cfg{e, s, v};
        CHECK(game_config_from_json(to_json(cfg)) == cfg);
      }
  CHECK(game_config_from_json(Json::object()) == GameConfig{});
  CHECK_THROWS_AS(game_config_from_json(Json{{"variant", "never"}}), Error);
}

TEST_CASE("classical strategies round trip") {
  const Graph k4 = named_cubic_graph("K4");
  const Strategy det = ClassicalStrategy::deterministic({0, 2, 1, 0}, 3);
  const Json j = to_json(det);
  CHECK(j["kind"] == "deterministic");
  CHECK(j["moves"]["2"] == 2);
  const auto back = std::get<ClassicalStrategy>(strategy_from_json(j, 3));
  CHECK(back.moves() == std::vector<Rank>{0, 2, 1, 0});

  const Strategy rnd = uniform_random(k4);
  const auto rback = std::get<ClassicalStrategy>(strategy_from_json(to_json(rnd), 3));
  CHECK_FALSE(rback.is_deterministic());
  CHECK(rback.move_distribution(4).isApprox(Eigen::VectorXd::Constant(3, 1.0 / 3)));
}

TEST_CASE("quantum strategies round trip") {
  const QubitStrategy q = k3_optimal_strategy();
  CHECK(std::get<QubitStrategy>(strategy_from_json(to_json(Strategy(q)), 2)).angles == q.angles);

  const QutritStrategy t = table3_k4_strategy();
  const auto tback = std::get<QutritStrategy>(strategy_from_json(to_json(Strategy(t)), 3));
  for (Vertex v = 1; v <= 4; ++v) CHECK(tback.at(v) == t.at(v));

  const QutritStrategy tied(t.triples(), {0, 0, 1, 1, 2, 2, 3, 3});
  const Json tj = to_json(Strategy(tied));
  CHECK(tj.contains("slots"));
  const auto tiedback = std::get<QutritStrategy>(strategy_from_json(tj, 3));
  CHECK(tiedback.slots() == tied.slots());
  CHECK(tiedback.tied());
}

TEST_CASE("malformed strategy JSON is a parse error") {
  CHECK(kind_of(Json::array()) == ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "psychic"}}) == ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "deterministic"}}) == ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "deterministic"}, {"moves", {{"1", 0}, {"3", 1}}}}) ==
        ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "deterministic"}, {"moves", {{"one", 0}}}}) == ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "qubit"}, {"angles", "fast"}}) == ErrorKind::Parse);
  CHECK(kind_of(Json{{"kind", "qutrit"}, {"angles", {{1.0, 2.0}}}}) == ErrorKind::Parse);
  CHECK(kind_of(Json::parse(R"({"kind":"qubit","angles":[0.1, 0.2]})")) == ErrorKind::Lookup);
}

TEST_CASE("simulation and noise summaries") {
  SimResult r;
  r.trials = 4;
  r.wins = 1;
  r.win_fraction = 0.25;
  r.convergence = {{0.0, 1, 0.0}, {2.0, 4, 0.25}};
  const Json j = to_json(r);
  CHECK(j["win_fraction"] == 0.25);
  CHECK(j["convergence"].size() == 2);
  const Json n = to_json(NoiseParams{0.001, 100});
  CHECK(n["p_circ"].get<double>() == doctest::Approx(1 - std::pow(0.999, 100)));
}

TEST_CASE("optimizer result JSON carries the trace") {
  const Graph k4 = named_cubic_graph("K4");
  OptimizerConfig oc;
  oc.restarts = 2;
  const auto r = optimize(k4, GameConfig{}, oc);
  const Json j = to_json(r, k4, GameConfig{}, oc);
  CHECK(j["graph"] == "K4");
  CHECK(j["trace"].size() == 2);
  CHECK(j["angles"].size() == 4);
  CHECK(j["objective"].get<double>() == r.best_objective);
}
