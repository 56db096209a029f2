#include "rendezvous/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "rendezvous/classical.hpp"
#include "rendezvous/error.hpp"
#include "rendezvous/nelder_mead.hpp"
#include "rendezvous/sampling.hpp"

namespace rendezvous {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_cubic(const Graph& g) {
  if (g.degree() != 3) {
    throw Error(ErrorKind::Arity, "graph '" + g.name() + "' has degree " +
                                      std::to_string(g.degree()) +
                                      ", qutrit strategies need degree 3");
  }
}

void require_length(const Graph& g, int len) {
  if (len != g.size()) {
    throw Error(ErrorKind::Arity, "strategy has " + std::to_string(len) +
                                      " sites, graph has " +
                                      std::to_string(g.size()));
  }
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int k = 2; static_cast<int>(primes.size()) < count; ++k) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(k);
  }
  return primes;
}

double radical_inverse(int index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

QutritStrategy unpack(const Eigen::VectorXd& x, const std::vector<int>& slot) {
  std::vector<EulerAnglesd> triples(x.size() / 3);
  for (std::size_t k = 0; k < triples.size(); ++k) {
    triples[k] = {x(3 * k), x(3 * k + 1), x(3 * k + 2)};
  }
  return QutritStrategy(std::move(triples), slot);
}

}  // namespace

double cubic_objective(const Graph& g, const GameConfig& cfg,
                       const QutritStrategy& s) {
  require_cubic(g);
  require_length(g, s.size());
  return exact_win_probability(g, cfg, qutrit_joint(s));
}

CubicObjective::CubicObjective(const Graph& g, const GameConfig& cfg)
    : n_(g.size()) {
  require_cubic(g);
  const double pairs =
      cfg.same_start_allowed ? double(n_) * n_ : double(n_) * (n_ - 1);
  weight_ = 1.0 / (3.0 * pairs);
  for (Vertex a = 1; a <= n_; ++a) {
    for (Vertex b = 1; b <= n_; ++b) {
      if (a == b) {
        if (!cfg.same_start_allowed) continue;
        if (cfg.check_first()) {
          constant_ += 1.0 / pairs;
          continue;
        }
      }
      Eigen::Matrix3d mask = Eigen::Matrix3d::Zero();
      for (Rank n = 0; n < 3; ++n) {
        for (Rank m = 0; m < 3; ++m) {
          if (wins_after_moves(g, cfg.meet_on_edges, a, b, n, m)) mask(n, m) = 1.0;
        }
      }
      if (!mask.isZero()) terms_.push_back({a - 1, b - 1, mask});
    }
  }
}

double CubicObjective::operator()(
    const std::vector<Eigen::Matrix3d>& rotations) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    const Eigen::Matrix3d m = rotations[t.a] * rotations[t.b].transpose();
    total += (m.array().square() * t.mask.array()).sum();
  }
  return constant_ + weight_ * total;
}

double CubicObjective::operator()(const QutritStrategy& s) const {
  std::vector<Eigen::Matrix3d> rot(n_);
  for (Vertex v = 1; v <= n_; ++v) rot[v - 1] = rank_ordered_rotation(s.at(v));
  return (*this)(rot);
}

QutritStrategy canonicalize(const QutritStrategy& s) {
  std::vector<EulerAnglesd> triples = s.triples();
  for (auto& t : triples) t = {wrap(t.alpha), wrap(t.beta), wrap(t.gamma)};
  return QutritStrategy(std::move(triples), s.slots());
}

OptimizationResult optimize(const Graph& g, const GameConfig& cfg,
                            const OptimizerConfig& oc) {
  require_cubic(g);
  if (oc.restarts < 1) throw Error(ErrorKind::Validation, "restarts must be >= 1");
  if (!(oc.tolerance > 0.0)) throw Error(ErrorKind::Validation, "tolerance must be > 0");

  std::vector<int> slot(g.size());
  for (int i = 0; i < g.size(); ++i) slot[i] = i;
  if (oc.tie != TieMode::Off) {
    if (auto tied = component_tying(g)) {
      slot = *tied;
    } else if (oc.tie == TieMode::On) {
      throw Error(ErrorKind::Validation,
                  "graph '" + g.name() +
                      "' has no isomorphic components to tie");
    }
  }
  const int free = *std::max_element(slot.begin(), slot.end()) + 1;
  const int dim = 3 * free;

  const CubicObjective objective(g, cfg);
  auto negated = [&](const Eigen::VectorXd& x) {
    std::vector<Eigen::Matrix3d> per_slot(free);
    for (int k = 0; k < free; ++k) {
      per_slot[k] = rank_ordered_rotation(
          EulerAnglesd{x(3 * k), x(3 * k + 1), x(3 * k + 2)});
    }
    std::vector<Eigen::Matrix3d> rot(g.size());
    for (int v = 0; v < g.size(); ++v) rot[v] = per_slot[slot[v]];
    return -objective(rot);
  };

  // Cranley-Patterson shift of the Halton points, drawn from the seed.
  const auto primes = first_primes(dim);
  std::vector<double> shift(dim);
  {
    Rng rng = make_rng(oc.seed, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& s : shift) s = u(rng);
  }

  std::vector<Eigen::VectorXd> best_x(oc.restarts);
  std::vector<RestartTrace> trace(oc.restarts);

  auto run_restart = [&](int r) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    if (r > 0) {
      for (int i = 0; i < dim; ++i) {
        x(i) = kTwoPi * std::fmod(radical_inverse(r, primes[i]) + shift[i], 1.0);
      }
    }
    RestartTrace t;
    t.index = r;
    double f = negated(x);
    t.start_objective = -f;
    int evals = 1;
    double step = oc.initial_step;
    // Re-seed the simplex around the incumbent until it stops improving.
    while (evals < oc.max_evals) {
      NelderMeadOptions nm{oc.max_evals - evals, oc.tolerance, step};
      auto res = nelder_mead_minimize<double>(negated, x, nm);
      evals += res.evals;
      const double gain = f - res.f;
      if (res.f < f) {
        x = res.x;
        f = res.f;
      }
      if (gain <= oc.tolerance) {
        if (step < 1e-3) break;
        step *= 0.25;
      }
    }
    t.final_objective = -f;
    t.evals = evals;
    best_x[r] = x;
    trace[r] = t;
  };

  int threads = oc.threads > 0 ? oc.threads
                               : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, oc.restarts);
  if (threads == 1) {
    for (int r = 0; r < oc.restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < oc.restarts; r += threads) run_restart(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  OptimizationResult out;
  out.trace = trace;
  for (const auto& t : trace) out.total_evals += t.evals;
  int best = 0;
  for (int r = 1; r < oc.restarts; ++r) {
    if (trace[r].final_objective > trace[best].final_objective) best = r;
  }
  out.best_restart = best;
  out.best = canonicalize(unpack(best_x[best], slot));
  out.best_objective = objective(out.best);
  return out;
}

}  // namespace rendezvous
