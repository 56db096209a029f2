#include "rendezvous/classical.hpp"

#include <cmath>

namespace rendezvous {

ClassicalStrategy ClassicalStrategy::deterministic(std::vector<Rank> moves,
                                                   int arity) {
  if (moves.empty()) throw Error(ErrorKind::Validation, "empty strategy");
  if (arity < 1) throw Error(ErrorKind::Arity, "arity must be >= 1");
  ClassicalStrategy s;
  s.kind_ = Kind::Deterministic;
  s.dist_.reserve(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Rank r = moves[i];
    if (r < 0 || r >= arity) {
      throw Error(ErrorKind::Arity, "site " + std::to_string(i + 1) + " rank " +
                                        std::to_string(r) + " outside [0, " +
                                        std::to_string(arity) + ")");
    }
    Eigen::VectorXd e = Eigen::VectorXd::Zero(arity);
    e(r) = 1.0;
    s.dist_.push_back(std::move(e));
  }
  s.moves_ = std::move(moves);
  return s;
}

ClassicalStrategy ClassicalStrategy::randomized(std::vector<Eigen::VectorXd> dist) {
  if (dist.empty()) throw Error(ErrorKind::Validation, "empty strategy");
  const auto arity = dist.front().size();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const auto& p = dist[i];
    if (p.size() != arity) {
      throw Error(ErrorKind::Arity, "site " + std::to_string(i + 1) +
                                        " distribution has wrong length");
    }
    if ((p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-9) {
      throw Error(ErrorKind::Validation,
                  "site " + std::to_string(i + 1) +
                      " distribution is not a probability vector");
    }
  }
  ClassicalStrategy s;
  s.kind_ = Kind::Randomized;
  s.dist_ = std::move(dist);
  return s;
}

Rank ClassicalStrategy::move(Vertex v) const {
  if (!is_deterministic()) {
    throw Error(ErrorKind::Validation, "randomized strategy has no fixed move");
  }
  if (v < 1 || v > size()) throw Error(ErrorKind::Validation, "vertex outside strategy");
  return moves_[v - 1];
}

const Eigen::VectorXd& ClassicalStrategy::move_distribution(Vertex v) const {
  if (v < 1 || v > size()) throw Error(ErrorKind::Validation, "vertex outside strategy");
  return dist_[v - 1];
}

void ClassicalStrategy::check_fits(const Graph& g) const {
  if (size() != g.size()) {
    throw Error(ErrorKind::Arity, "strategy covers " + std::to_string(size()) +
                                      " sites, graph has " +
                                      std::to_string(g.size()));
  }
  if (arity() != g.degree()) {
    throw Error(ErrorKind::Arity, "distribution length " +
                                      std::to_string(arity()) +
                                      " does not match degree " +
                                      std::to_string(g.degree()));
  }
}

ClassicalStrategy go_to_lowest(const Graph& g) {
  return ClassicalStrategy::deterministic(std::vector<Rank>(g.size(), 0),
                                         g.degree());
}

ClassicalStrategy go_to_highest(const Graph& g) {
  return ClassicalStrategy::deterministic(
      std::vector<Rank>(g.size(), g.degree() - 1), g.degree());
}

ClassicalStrategy uniform_random(const Graph& g) {
  const int d = g.degree();
  return ClassicalStrategy::randomized(std::vector<Eigen::VectorXd>(
      g.size(), Eigen::VectorXd::Constant(d, 1.0 / d)));
}

JointProvider product_joint(ClassicalStrategy alice, ClassicalStrategy bob) {
  return [alice = std::move(alice), bob = std::move(bob)](Vertex a, Vertex b) {
    return Eigen::MatrixXd(alice.move_distribution(a) *
                           bob.move_distribution(b).transpose());
  };
}

JointProvider product_joint(ClassicalStrategy both) {
  return product_joint(both, both);
}

double closed_form_cycle_classical(int n, CycleClassicalVariant variant) {
  if (n < 3) {
    throw Error(ErrorKind::InvalidSize,
                "cycle needs n >= 3, got " + std::to_string(n));
  }
  const double nd = n;
  switch (variant) {
    case CycleClassicalVariant::GoToLowest:
      return n == 3 ? 5.0 / 9.0 : (nd + 4.0) / (nd * nd);
    case CycleClassicalVariant::RandomCheckLater:
      return 1.0 / nd;
    case CycleClassicalVariant::RandomCheckFirst:
      return 3.0 / (2.0 * nd);
  }
  return 0.0;
}

}  // namespace rendezvous
