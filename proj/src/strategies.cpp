#include "rendezvous/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rendezvous/error.hpp"

namespace rendezvous {

namespace {

constexpr double kPi = std::numbers::pi;

void require_cycle_size(int n) {
  if (n < 3) {
    throw Error(ErrorKind::InvalidSize,
                "cycle needs n >= 3, got " + std::to_string(n));
  }
}

double sq(double x) { return x * x; }

}  // namespace

QutritStrategy::QutritStrategy(std::vector<EulerAnglesd> per_site)
    : triples_(std::move(per_site)) {
  slot_.resize(triples_.size());
  for (std::size_t i = 0; i < slot_.size(); ++i) slot_[i] = static_cast<int>(i);
}

QutritStrategy::QutritStrategy(std::vector<EulerAnglesd> triples,
                               std::vector<int> slot)
    : triples_(std::move(triples)), slot_(std::move(slot)) {
  for (int s : slot_) {
    if (s < 0 || s >= free_triples()) {
      throw Error(ErrorKind::Validation, "tying slot out of range");
    }
  }
}

std::vector<EulerAnglesd> QutritStrategy::per_site() const {
  std::vector<EulerAnglesd> out;
  out.reserve(slot_.size());
  for (int s : slot_) out.push_back(triples_[s]);
  return out;
}

std::optional<std::vector<int>> component_tying(const Graph& g) {
  const auto comps = g.components();
  if (comps.size() < 2) return std::nullopt;
  std::vector<int> slot(g.size(), -1);
  const auto& base = comps.front();
  for (std::size_t i = 0; i < base.size(); ++i) slot[base[i] - 1] = static_cast<int>(i);
  for (std::size_t c = 1; c < comps.size(); ++c) {
    if (comps[c].size() != base.size()) return std::nullopt;
    const auto image = rank_preserving_isomorphism(g, base, comps[c]);
    if (image.empty()) return std::nullopt;
    for (std::size_t i = 0; i < base.size(); ++i) {
      slot[image[i] - 1] = static_cast<int>(i);
    }
  }
  return slot;
}

int strategy_arity(const Strategy& s) {
  if (const auto* c = std::get_if<ClassicalStrategy>(&s)) return c->arity();
  if (std::holds_alternative<QubitStrategy>(s)) return 2;
  return 3;
}

void check_fits(const Graph& g, const Strategy& s) {
  if (const auto* c = std::get_if<ClassicalStrategy>(&s)) {
    c->check_fits(g);
    return;
  }
  const int len = std::holds_alternative<QubitStrategy>(s)
                      ? std::get<QubitStrategy>(s).size()
                      : std::get<QutritStrategy>(s).size();
  if (strategy_arity(s) != g.degree()) {
    throw Error(ErrorKind::Arity, "strategy has " +
                                      std::to_string(strategy_arity(s)) +
                                      " outcomes per site, graph '" + g.name() +
                                      "' has degree " + std::to_string(g.degree()));
  }
  if (len != g.size()) {
    throw Error(ErrorKind::Arity, "strategy covers " + std::to_string(len) +
                                      " sites, graph has " +
                                      std::to_string(g.size()));
  }
}

JointProvider joint_provider(const Strategy& s) {
  if (const auto* c = std::get_if<ClassicalStrategy>(&s)) return product_joint(*c);
  if (const auto* q = std::get_if<QubitStrategy>(&s)) return qubit_joint(*q);
  return qutrit_joint(std::get<QutritStrategy>(s));
}

JointProvider qubit_joint(QubitStrategy s) {
  return [s = std::move(s)](Vertex a, Vertex b) {
    return Eigen::MatrixXd(outcome_matrix_qubit(s.at(a), s.at(b)));
  };
}

JointProvider qutrit_joint(QutritStrategy s) {
  std::vector<Eigen::Matrix3d> rot;
  rot.reserve(s.size());
  for (Vertex v = 1; v <= s.size(); ++v) rot.push_back(rank_ordered_rotation(s.at(v)));
  return [rot = std::move(rot)](Vertex a, Vertex b) {
    return Eigen::MatrixXd(outcome_matrix_qutrit<double>(rot.at(a - 1), rot.at(b - 1)));
  };
}

QubitStrategy cycle_ansatz(int n, double theta, bool endpoint_offsets) {
  require_cycle_size(n);
  QubitStrategy s;
  s.angles.resize(n);
  for (int j = 1; j <= n; ++j) {
    double t = (j - 1) * theta;
    if (endpoint_offsets && (j == 1 || j == n)) t += kPi;
    s.angles[j - 1] = t;
  }
  return s;
}

QubitStrategy k3_optimal_strategy() { return {{0.0, kPi / 3.0, 2.0 * kPi / 3.0}}; }

QutritStrategy table3_k4_strategy() {
  return QutritStrategy({{4.0841, 2.4784, 1.5708},
                         {0.4538, 3.2638, 4.9393},
                         {0.4538, 2.7925, 4.4244},
                         {0.0262, 3.0543, 0.7069}});
}

double cycle_win_prob_closed(int n, double theta, bool e) {
  require_cycle_size(n);
  const double nd = n;
  double p = nd + (nd - 2.0) * sq(std::sin(theta)) +
             2.0 * sq(std::sin((nd - 2.0) / 2.0 * theta));
  if (e) {
    p += sq(std::sin((nd - 1.0) / 2.0 * theta)) +
         (nd - 1.0) * sq(std::sin(theta / 2.0));
  }
  return p / (nd * nd);
}

ThetaOptimum optimal_theta(int n, bool e) {
  require_cycle_size(n);
  constexpr int kGrid = 10000;
  const double step = kPi / kGrid;
  const auto f = [&](double t) { return cycle_win_prob_closed(n, t, e); };

  std::vector<double> values(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) values[i] = f(i * step);

  struct Candidate {
    double theta;
    double p;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i <= kGrid; ++i) {
    const double left = i > 0 ? values[i - 1] : -1.0;
    const double right = i < kGrid ? values[i + 1] : -1.0;
    if (values[i] < left || values[i] < right) continue;
    // Golden-section search on the bracketing cells, clipped to [0, pi].
    double lo = std::max(0.0, (i - 1) * step);
    double hi = std::min(kPi, (i + 1) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = f(x1);
      }
    }
    Candidate best{i * step, values[i]};
    for (double t : {lo, hi, 0.5 * (lo + hi)}) {
      if (f(t) > best.p) best = {t, f(t)};
    }
    candidates.push_back(best);
  }

  ThetaOptimum out;
  for (const auto& c : candidates) out.p_max = std::max(out.p_max, c.p);
  for (const auto& c : candidates) {
    if (out.p_max - c.p > 1e-9) continue;
    if (!out.all_maxima.empty() && c.theta - out.all_maxima.back() < 1e-6) continue;
    out.all_maxima.push_back(c.theta);
  }
  out.theta_max = out.all_maxima.front();
  return out;
}

Asymptote cycle_asymptote(bool e) {
  if (e) return {41.0 / 16.0, std::acos(-0.25)};
  return {2.0, kPi / 2.0};
}

double nst_bound(int n, bool e) {
  require_cycle_size(n);
  return (e ? 3.0 : 2.0) / n;
}

std::optional<NstWitness> nst_attainable(int n) {
  require_cycle_size(n);
  // (n-2)/2 = (2mu+1)/(2nu+1)  <=>  (n-2)(2nu+1) = 2(2mu+1)
  for (int nu = 1; nu <= 100; ++nu) {
    for (int mu = 0; mu <= 100; ++mu) {
      if ((n - 2) * (2 * nu + 1) == 2 * (2 * mu + 1)) {
        return NstWitness{nu, mu, kPi / 2.0 * (2 * nu + 1)};
      }
    }
  }
  return std::nullopt;
}

JointProvider role_split_joint(const Graph& cycle) {
  if (cycle.degree() != 2) {
    throw Error(ErrorKind::Arity, "role splitting needs a cycle graph");
  }
  const int n = cycle.size();
  // Rank of the clockwise neighbor at each vertex.
  std::vector<Rank> cw(n);
  for (Vertex v = 1; v <= n; ++v) {
    const auto r = cycle.rank_of(v, v % n + 1);
    if (!r) throw Error(ErrorKind::Validation, "graph is not the ring 1..n");
    cw[v - 1] = *r;
  }
  const Eigen::Matrix2d bits = anticorrelated_pair_outcomes<double>();
  return [cw, bits](Vertex a, Vertex b) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const Rank ra = x == 0 ? cw[a - 1] : 1 - cw[a - 1];
        const Rank rb = y == 0 ? cw[b - 1] : 1 - cw[b - 1];
        p(ra, rb) += bits(x, y);
      }
    }
    return p;
  };
}

SharedRandomnessResult shared_randomness_strategy_c3() {
  const Graph c3 = cycle_graph(3);
  GameConfig cfg;
  cfg.same_start_allowed = false;
  SharedRandomnessResult r;
  r.description =
      "anticorrelated role bits on C3: bit 0 moves clockwise, bit 1 "
      "counter-clockwise";
  r.role_bits = anticorrelated_pair_outcomes<double>();
  r.win_probability = exact_win_probability(c3, cfg, role_split_joint(c3));
  return r;
}

}  // namespace rendezvous
