#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rendezvous/error.hpp"
#include "rendezvous/strategies.hpp"

using namespace rendezvous;

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg(double d) { return d * kPi / 180.0; }

GameConfig edges(bool e, SameStartVariant v = SameStartVariant::CheckLater) {
  GameConfig cfg;
  cfg.meet_on_edges = e;
  cfg.variant = v;
  return cfg;
}

double ramp_value(int n, double theta, bool e, bool offsets = true) {
  return exact_win_probability(cycle_graph(n), edges(e), qubit_joint(cycle_ansatz(n, theta, offsets)));
}

}  // namespace

TEST_CASE("ramp ansatz layout") {
  const auto s = cycle_ansatz(4, kPi / 2);
  REQUIRE(s.size() == 4);
  CHECK(s.at(1) == doctest::Approx(kPi));
  CHECK(s.at(2) == doctest::Approx(kPi / 2));
  CHECK(s.at(3) == doctest::Approx(kPi));
  CHECK(s.at(4) == doctest::Approx(2.5 * kPi));
  CHECK(ramp_value(4, kPi / 2, false) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(cycle_ansatz(2, 0.1), Error);
}

TEST_CASE("K3 entangled strategy beats go-to-lowest by 1/36") {
  const Graph c3 = cycle_graph(3);
  const auto s = k3_optimal_strategy();
  const double p = exact_win_probability(c3, GameConfig{}, qubit_joint(s));
  CHECK(std::abs(p - (5.0 / 9.0 + 1.0 / 36.0)) < 1e-12);
  for (int site = 0; site < 3; ++site) {
    for (double d : {-0.1, 0.1}) {
      auto t = s;
      t.angles[site] += d;
      CHECK(exact_win_probability(c3, GameConfig{}, qubit_joint(t)) < p);
    }
  }
}

TEST_CASE("closed form matches the statevector enumeration") {
  double worst = 0.0;
  for (int n = 3; n <= 30; ++n) {
    const Graph g = cycle_graph(n);
    for (int k = 0; k < 32; ++k) {
      const double theta = k * kPi / 31.0;
      const auto s = cycle_ansatz(n, theta);
      const auto joint = [&](Vertex a, Vertex b) -> Eigen::MatrixXd {
        return oracle::qubit_closed_form(s.at(a), s.at(b));
      };
      for (bool e : {false, true}) {
        for (auto v : {SameStartVariant::CheckLater, SameStartVariant::CheckFirst}) {
          const double want = cycle_win_prob_closed(n, theta, e);
          worst = std::max(worst, std::abs(oracle::enumerate(g, edges(e, v), joint) - want));
          worst = std::max(worst, std::abs(exact_win_probability(g, edges(e, v), qubit_joint(s)) - want));
        }
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("optimal ramp angles") {
  struct Row {
    int n;
    std::vector<double> e0_deg, e1_deg;
    double e0_p, e1_p;
  };
  // The E=1, N=6 optimum sits at 120 degrees; the closed form is strictly
  // smaller at 60.
  const std::vector<Row> rows = {
      {3, {120}, {120}, 0.5833, 0.8333},
      {4, {90}, {90}, 0.5000, 0.6250},
      {5, {72}, {72, 144}, 0.3809, 0.4500},
      {6, {60, 120}, {120}, 0.2917, 0.4167},
      {7, {720.0 / 7}, {720.0 / 7}, 0.2786, 0.3660},
      {8, {90}, {90}, 0.2500, 0.3125},
      {9, {80}, {120}, 0.2189, 0.2778},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    for (bool e : {false, true}) {
      const auto opt = optimal_theta(r.n, e);
      const auto& want = e ? r.e1_deg : r.e0_deg;
      REQUIRE(opt.all_maxima.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(opt.all_maxima[i] * 180.0 / kPi - want[i]) < 0.01);
      CHECK(std::abs(opt.p_max - (e ? r.e1_p : r.e0_p)) < 5e-5);
      CHECK(opt.theta_max == opt.all_maxima.front());
    }
  }
  CHECK(cycle_win_prob_closed(6, deg(60), true) < cycle_win_prob_closed(6, deg(120), true) - 1e-3);
}

TEST_CASE("edge meetings never hurt the ramp") {
  for (int n = 3; n <= 40; ++n)
    for (int k = 0; k <= 64; ++k) {
      const double t = k * kPi / 64;
      CHECK(cycle_win_prob_closed(n, t, true) >= cycle_win_prob_closed(n, t, false));
    }
}

TEST_CASE("non-signalling ceilings") {
  const double e0[] = {0.66667, 0.5, 0.4, 0.33333, 0.28571, 0.25, 0.22222};
  const double e1[] = {1.0, 0.75, 0.6, 0.5, 0.42857, 0.375, 0.33333};
  for (int n = 3; n <= 9; ++n) {
    CHECK(std::abs(nst_bound(n, false) - e0[n - 3]) < 5e-6);
    CHECK(std::abs(nst_bound(n, true) - e1[n - 3]) < 5e-6);
  }
}

TEST_CASE("NST witnesses follow the parity rule") {
  for (int n = 3; n <= 60; ++n) {
    CAPTURE(n);
    const auto w = nst_attainable(n);
    CHECK(w.has_value() == oracle::nst_parity(n));
    if (w) {
      CHECK((n - 2) * (2 * w->nu + 1) == 2 * (2 * w->mu + 1));
      CHECK(cycle_win_prob_closed(n, w->theta_max, false) == doctest::Approx(2.0 / n).epsilon(1e-12));
      // Where the ceiling is reachable the ramp optimum touches it.
      CHECK(optimal_theta(n, false).p_max == doctest::Approx(2.0 / n).epsilon(1e-9));
    } else {
      CHECK(optimal_theta(n, false).p_max < 2.0 / n - 1e-9);
    }
  }
  const auto w4 = nst_attainable(4);
  REQUIRE(w4);
  CHECK(w4->nu == 1);
  CHECK(w4->mu == 1);
  const auto w8 = nst_attainable(8);
  REQUIRE(w8);
  CHECK(w8->nu == 1);
  CHECK(w8->mu == 4);
}

TEST_CASE("large-n behavior of the ramp") {
  const auto a0 = cycle_asymptote(false);
  const auto a1 = cycle_asymptote(true);
  CHECK(a0.n_p_limit == 2.0);
  CHECK(a1.n_p_limit == doctest::Approx(41.0 / 16.0));
  const int n = 10000;
  CHECK(std::abs(n * cycle_win_prob_closed(n, a0.theta_limit, false) - 2.0) < 1e-3);
  CHECK(std::abs(n * cycle_win_prob_closed(n, a1.theta_limit, true) - 41.0 / 16.0) < 2e-3);
}

TEST_CASE("role splitting on C3 without shared starts") {
  const auto r = shared_randomness_strategy_c3();
  CHECK(r.win_probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.role_bits(0, 0) == 0.0);
  CHECK(r.role_bits(1, 1) == 0.0);
  CHECK(r.role_bits.sum() == doctest::Approx(1.0));
  GameConfig cfg;
  cfg.same_start_allowed = false;
  const Graph c3 = cycle_graph(3);
  CHECK(oracle::enumerate(c3, cfg, role_split_joint(c3)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oracle::best_symmetric_deterministic(c3, cfg) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("offset-free ramp stays below the offset ramp") {
  for (int n : {5, 7, 9}) {
    double best_plain = 0.0;
    for (int k = 0; k <= 3600; ++k)
      best_plain = std::max(best_plain, ramp_value(n, k * 2 * kPi / 3600, false, false));
    CHECK(best_plain <= optimal_theta(n, false).p_max - 1e-3);
  }
}

TEST_CASE("strategy fit checks") {
  const Graph k4 = named_cubic_graph("K4");
  try {
    check_fits(k4, Strategy(cycle_ansatz(4, 0.3)));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Arity);
  }
  CHECK_NOTHROW(check_fits(k4, Strategy(table3_k4_strategy())));
  CHECK(strategy_arity(Strategy(k3_optimal_strategy())) == 2);
  CHECK(strategy_arity(Strategy(table3_k4_strategy())) == 3);
}

TEST_CASE("component tying on 2K4") {
  const auto slots = component_tying(named_cubic_graph("2K4"));
  REQUIRE(slots);
  CHECK(*slots == std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3});
  CHECK_FALSE(component_tying(named_cubic_graph("K4")));
}
