#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/strategies.hpp"

namespace rendezvous {

/// Exact win probability of a qutrit strategy on a degree-3 graph. Goes
/// through the validating enumeration engine; throws ErrorKind::Arity on a
/// degree or length mismatch.
double cubic_objective(const Graph& g, const GameConfig& cfg,
                       const QutritStrategy& s);

/// Precomputed form of cubic_objective for the inner optimization loop: the
/// winning cells of every start pair are cached as 0/1 masks, so one
/// evaluation is N rotations plus N^2 3x3 products.
class CubicObjective {
 public:
  CubicObjective(const Graph& g, const GameConfig& cfg);

  /// `rotations[v-1]` is the rank-ordered rotation of site v.
  double operator()(const std::vector<Eigen::Matrix3d>& rotations) const;
  double operator()(const QutritStrategy& s) const;

  int size() const noexcept { return n_; }

 private:
  struct PairTerm {
    int a;
    int b;
    Eigen::Matrix3d mask;
  };
  int n_ = 0;
  double constant_ = 0.0;  // check-first diagonal wins
  double weight_ = 0.0;
  std::vector<PairTerm> terms_;
};

enum class TieMode { Auto, On, Off };

struct OptimizerConfig {
  int restarts = 64;
  int max_evals = 20000;      // per restart
  std::uint64_t seed = 1;
  double tolerance = 1e-12;   // simplex objective spread at convergence
  double initial_step = 0.6;  // radians
  TieMode tie = TieMode::Auto;
  int threads = 0;            // 0: hardware concurrency
};

struct RestartTrace {
  int index = 0;
  double start_objective = 0.0;
  double final_objective = 0.0;
  int evals = 0;
};

struct OptimizationResult {
  QutritStrategy best;
  double best_objective = 0.0;
  int best_restart = 0;
  std::vector<RestartTrace> trace;
  long long total_evals = 0;
};

/// Multi-restart downhill simplex over all Euler angles (or one component's
/// worth when tying is active). Restart 0 starts from all-zero angles, the
/// rest from a shifted Halton sequence over [0, 2pi). Results depend only on
/// the config, not on the thread count.
OptimizationResult optimize(const Graph& g, const GameConfig& cfg,
                            const OptimizerConfig& oc);

/// Wraps every angle into [0, 2pi).
QutritStrategy canonicalize(const QutritStrategy& s);

}  // namespace rendezvous
