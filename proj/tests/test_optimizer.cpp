#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rendezvous/error.hpp"
#include "rendezvous/optimizer.hpp"

using namespace rendezvous;

namespace {

constexpr double kPi = 3.14159265358979323846;

QutritStrategy random_qutrit(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  std::vector<EulerAnglesd> t;
  for (int i = 0; i < n; ++i) t.push_back({u(rng), u(rng), u(rng)});
  return QutritStrategy(std::move(t));
}

Eigen::MatrixXd statevector_joint(const QutritStrategy& s, Vertex a, Vertex b) {
  return oracle::qutrit_statevector(s.at(a), s.at(b));
}

}  // namespace

TEST_CASE("published K4 angles reach 0.645") {
  const Graph k4 = named_cubic_graph("K4");
  CHECK(std::abs(cubic_objective(k4, GameConfig{}, table3_k4_strategy()) - 0.645) < 5e-4);
}

TEST_CASE("objective agrees with the statevector oracle") {
  std::mt19937_64 rng(21);
  for (const auto& name : named_cubic_graph_names()) {
    const Graph g = named_cubic_graph(name);
    for (bool e : {false, true}) {
      GameConfig cfg;
      cfg.meet_on_edges = e;
      for (int i = 0; i < 5; ++i) {
        const auto s = random_qutrit(g.size(), rng);
        const double want =
            oracle::enumerate(g, cfg, [&](Vertex a, Vertex b) { return statevector_joint(s, a, b); });
        CHECK(cubic_objective(g, cfg, s) == doctest::Approx(want).epsilon(1e-12));
        CHECK(CubicObjective(g, cfg)(s) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
  // All-zero angles: identical measurements, perfectly correlated ranks.
  const Graph k4 = named_cubic_graph("K4");
  const QutritStrategy zero(std::vector<EulerAnglesd>(4));
  const double want =
      oracle::enumerate(k4, GameConfig{}, [&](Vertex a, Vertex b) { return statevector_joint(zero, a, b); });
  CHECK(cubic_objective(k4, GameConfig{}, zero) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("check-first objective adds the shared-start wins") {
  const Graph q3 = named_cubic_graph("Q3");
  GameConfig first;
  first.variant = SameStartVariant::CheckFirst;
  std::mt19937_64 rng(2);
  const auto s = random_qutrit(8, rng);
  const double want =
      oracle::enumerate(q3, first, [&](Vertex a, Vertex b) { return statevector_joint(s, a, b); });
  CHECK(CubicObjective(q3, first)(s) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("tied 2K4 is half of K4") {
  const Graph k4 = named_cubic_graph("K4");
  const Graph two = named_cubic_graph("2K4");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto s = random_qutrit(4, rng);
    const QutritStrategy tied(s.triples(), *component_tying(two));
    for (bool e : {false, true}) {
      GameConfig cfg;
      cfg.meet_on_edges = e;
      CHECK(std::abs(cubic_objective(two, cfg, tied) - cubic_objective(k4, cfg, s) / 2) < 1e-10);
    }
  }
}

TEST_CASE("a common right rotation leaves the objective unchanged") {
  const Graph y3 = named_cubic_graph("Y3");
  const CubicObjective f(y3, GameConfig{});
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto s = random_qutrit(6, rng);
    const Eigen::Matrix3d q = euler_rotation(random_qutrit(1, rng).at(1));
    std::vector<Eigen::Matrix3d> base, turned;
    for (Vertex v = 1; v <= 6; ++v) {
      base.push_back(rank_ordered_rotation(s.at(v)));
      turned.push_back(base.back() * q);
    }
    CHECK(f(turned) == doctest::Approx(f(base)).epsilon(1e-12));
    CHECK(f(base) == doctest::Approx(f(s)).epsilon(1e-12));
  }
}

TEST_CASE("canonicalize wraps angles without changing the objective") {
  const Graph k4 = named_cubic_graph("K4");
  QutritStrategy s({{-1.0, 7.0, 20.0}, {0.1, -0.2, 0.3}, {13.0, 2.0, -9.0}, {0.0, 0.0, 6.5}});
  const auto c = canonicalize(s);
  for (const auto& t : c.triples()) {
    for (double x : {t.alpha, t.beta, t.gamma}) {
      CHECK(x >= 0.0);
      CHECK(x < 2 * kPi);
    }
  }
  CHECK(cubic_objective(k4, GameConfig{}, c) ==
        doctest::Approx(cubic_objective(k4, GameConfig{}, s)).epsilon(1e-12));
}

TEST_CASE("optimizer is deterministic and beats go-to-lowest") {
  const Graph k4 = named_cubic_graph("K4");
  OptimizerConfig oc;
  oc.restarts = 4;
  oc.seed = 3;
  oc.threads = 1;
  const auto a = optimize(k4, GameConfig{}, oc);
  oc.threads = 3;
  const auto b = optimize(k4, GameConfig{}, oc);
  CHECK(a.best_objective == b.best_objective);
  CHECK(a.best_restart == b.best_restart);
  REQUIRE(a.best.size() == b.best.size());
  for (Vertex v = 1; v <= 4; ++v) CHECK(a.best.at(v) == b.best.at(v));
  CHECK(a.trace.size() == 4);
  CHECK(a.best_objective >= 0.625);
  CHECK(a.best_objective == doctest::Approx(cubic_objective(k4, GameConfig{}, a.best)).epsilon(1e-12));
}

TEST_CASE("optimizer ties 2K4 components automatically") {
  OptimizerConfig oc;
  oc.restarts = 2;
  const auto r = optimize(named_cubic_graph("2K4"), GameConfig{}, oc);
  CHECK(r.best.tied());
  CHECK(r.best.free_triples() == 4);
  oc.tie = TieMode::On;
  try {
    optimize(named_cubic_graph("Q3"), GameConfig{}, oc);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("degree and length mismatches are arity errors") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Lookup;
  };
  const QutritStrategy four(std::vector<EulerAnglesd>(4));
  CHECK(kind_of([&] { cubic_objective(cycle_graph(4), GameConfig{}, four); }) == ErrorKind::Arity);
  CHECK(kind_of([&] { cubic_objective(named_cubic_graph("Q3"), GameConfig{}, four); }) ==
        ErrorKind::Arity);
  CHECK(kind_of([&] { optimize(cycle_graph(5), GameConfig{}, OptimizerConfig{}); }) ==
        ErrorKind::Arity);
}
