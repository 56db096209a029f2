#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/error.hpp"
#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/quantum.hpp"

namespace rendezvous {

/// Per-site classical strategy: either a fixed rank per vertex or a
/// probability vector over ranks per vertex.
class ClassicalStrategy {
 public:
  enum class Kind { Deterministic, Randomized };

  static ClassicalStrategy deterministic(std::vector<Rank> moves, int arity);
  static ClassicalStrategy randomized(std::vector<Eigen::VectorXd> dist);

  Kind kind() const noexcept { return kind_; }
  bool is_deterministic() const noexcept { return kind_ == Kind::Deterministic; }
  int size() const noexcept { return static_cast<int>(dist_.size()); }
  int arity() const noexcept {
    return dist_.empty() ? 0 : static_cast<int>(dist_.front().size());
  }

  /// Rank for vertex v; deterministic strategies only.
  Rank move(Vertex v) const;
  const std::vector<Rank>& moves() const noexcept { return moves_; }

  const Eigen::VectorXd& move_distribution(Vertex v) const;

  /// Throws ErrorKind::Arity when the strategy's site count or arity does not
  /// match the graph.
  void check_fits(const Graph& g) const;

 private:
  ClassicalStrategy() = default;

  Kind kind_ = Kind::Deterministic;
  std::vector<Rank> moves_;
  std::vector<Eigen::VectorXd> dist_;
};

ClassicalStrategy go_to_lowest(const Graph& g);
ClassicalStrategy go_to_highest(const Graph& g);
ClassicalStrategy uniform_random(const Graph& g);

/// Anything that yields a d x d joint distribution over (Alice rank, Bob rank)
/// for an ordered pair of start vertices.
template <class P>
concept JointOutcomeProvider = requires(const P& p, Vertex a, Vertex b) {
  { p(a, b) } -> std::convertible_to<Eigen::MatrixXd>;
};

using JointProvider = std::function<Eigen::MatrixXd(Vertex, Vertex)>;

/// Independent moves: the joint is the outer product of the two players'
/// per-site distributions. The players may use different strategies.
JointProvider product_joint(ClassicalStrategy alice, ClassicalStrategy bob);
JointProvider product_joint(ClassicalStrategy both);

/// Winning mass of a single start pair given its joint rank distribution.
template <class Derived>
double win_mass(const Graph& g, bool meet_on_edges, Vertex a, Vertex b,
                const Eigen::MatrixBase<Derived>& joint) {
  double mass = 0.0;
  for (Rank n = 0; n < joint.rows(); ++n) {
    for (Rank m = 0; m < joint.cols(); ++m) {
      if (wins_after_moves(g, meet_on_edges, a, b, n, m)) mass += joint(n, m);
    }
  }
  return mass;
}

/// Exact win probability over uniformly random starts and the provider's move
/// distribution. With s=1 all N^2 ordered pairs are weighted 1/N^2 (shared
/// starts count as wins under check-first, and contribute their winning mass
/// under check-later); with s=0 the N^2 - N distinct pairs are weighted
/// equally. Throws ErrorKind::Validation if a joint matrix has the wrong shape
/// or is not a probability distribution.
template <JointOutcomeProvider Provider>
double exact_win_probability(const Graph& g, const GameConfig& cfg,
                             const Provider& joint) {
  const int n = g.size();
  const int d = g.degree();
  double total = 0.0;
  for (Vertex a = 1; a <= n; ++a) {
    double row = 0.0;
    for (Vertex b = 1; b <= n; ++b) {
      if (a == b) {
        if (!cfg.same_start_allowed) continue;
        if (cfg.check_first()) {
          row += 1.0;
          continue;
        }
      }
      const Eigen::MatrixXd p = joint(a, b);
      if (p.rows() != d || p.cols() != d) {
        throw Error(ErrorKind::Validation,
                    "joint matrix for (" + std::to_string(a) + "," +
                        std::to_string(b) + ") is not " + std::to_string(d) +
                        "x" + std::to_string(d));
      }
      if (!is_distribution(p, 1e-9)) {
        throw Error(ErrorKind::Validation,
                    "joint matrix for (" + std::to_string(a) + "," +
                        std::to_string(b) + ") is not a distribution");
      }
      row += win_mass(g, cfg.meet_on_edges, a, b, p);
    }
    total += row;
  }
  const double pairs =
      cfg.same_start_allowed ? double(n) * n : double(n) * (n - 1);
  return total / pairs;
}

enum class CycleClassicalVariant { GoToLowest, RandomCheckLater, RandomCheckFirst };

/// Closed forms on C_n for go-to-lowest ((n+4)/n^2, 5/9 at n=3) and the
/// fair-coin strategies (1/n check-later, 3/(2n) check-first). E=0.
double closed_form_cycle_classical(int n, CycleClassicalVariant variant);

}  // namespace rendezvous
