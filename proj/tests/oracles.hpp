#pragma once

// Independent reference computations. None of these call the library's
// enumeration engine or outcome-matrix code paths they are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/classical.hpp"
#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/quantum.hpp"

namespace oracle {

using rendezvous::GameConfig;
using rendezvous::Graph;
using rendezvous::Rank;
using rendezvous::Vertex;

/// Closed-form EPR outcome matrix: cos^2 / sin^2 of half the angle gap.
inline Eigen::Matrix2d qubit_closed_form(double ta, double tb) {
  const double c = std::cos((tb - ta) / 2), s = std::sin((tb - ta) / 2);
  Eigen::Matrix2d p;
  p << c * c / 2, s * s / 2, s * s / 2, c * c / 2;
  return p;
}

/// Nine-amplitude statevector route for the qutrit pair. Rotations act in
/// the matrix's own basis order (+1, 0, -1); probabilities are then
/// re-indexed to move ranks (-1, 0, +1).
inline Eigen::Matrix3d qutrit_statevector(const rendezvous::EulerAnglesd& a,
                                          const rendezvous::EulerAnglesd& b) {
  const Eigen::Matrix3d ra = rendezvous::euler_rotation(a);
  const Eigen::Matrix3d rb = rendezvous::euler_rotation(b);
  Eigen::Matrix<double, 9, 1> psi = Eigen::Matrix<double, 9, 1>::Zero();
  for (int k = 0; k < 3; ++k) psi(3 * k + k) = 1.0 / std::sqrt(3.0);
  Eigen::Matrix<double, 9, 9> u;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) u(3 * i + k, 3 * j + l) = ra(i, j) * rb(k, l);
  const Eigen::Matrix<double, 9, 1> out = u * psi;
  Eigen::Matrix3d p;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) p(n, m) = out(3 * (2 - n) + (2 - m)) * out(3 * (2 - n) + (2 - m));
  return p;
}

/// Win probability by direct round-by-round adjudication with resolve_round,
/// for a joint given as a function of (a, b) returning a d x d matrix.
inline double enumerate(const Graph& g, const GameConfig& cfg,
                        const std::function<Eigen::MatrixXd(Vertex, Vertex)>& joint) {
  double total = 0.0;
  long long pairs = 0;
  for (Vertex a = 1; a <= g.size(); ++a) {
    for (Vertex b = 1; b <= g.size(); ++b) {
      if (a == b && !cfg.same_start_allowed) continue;
      ++pairs;
      const Eigen::MatrixXd p = joint(a, b);
      for (Rank n = 0; n < g.degree(); ++n) {
        for (Rank m = 0; m < g.degree(); ++m) {
          if (rendezvous::resolve_round(g, cfg, a, b, n, m).won()) total += p(n, m);
        }
      }
    }
  }
  return total / double(pairs);
}

/// Deterministic symmetric strategy evaluated by counting start pairs.
inline double deterministic_value(const Graph& g, const GameConfig& cfg,
                                  const std::vector<Rank>& moves) {
  long long wins = 0, pairs = 0;
  for (Vertex a = 1; a <= g.size(); ++a) {
    for (Vertex b = 1; b <= g.size(); ++b) {
      if (a == b && !cfg.same_start_allowed) continue;
      ++pairs;
      wins += rendezvous::resolve_round(g, cfg, a, b, moves[a - 1], moves[b - 1]).won();
    }
  }
  return double(wins) / double(pairs);
}

/// Best symmetric deterministic strategy over all degree^N rank maps.
inline double best_symmetric_deterministic(const Graph& g, const GameConfig& cfg) {
  const int n = g.size(), d = g.degree();
  std::vector<Rank> moves(n, 0);
  double best = 0.0;
  while (true) {
    best = std::max(best, deterministic_value(g, cfg, moves));
    int i = 0;
    while (i < n && ++moves[i] == d) moves[i++] = 0;
    if (i == n) break;
  }
  return best;
}

/// (n-2)/2 in lowest terms must be odd/odd for the NST bound to be reachable.
inline bool nst_parity(int n) {
  int p = n - 2, q = 2;
  const int g = std::gcd(p, q);
  p /= g;
  q /= g;
  return p % 2 == 1 && q % 2 == 1;
}

}  // namespace oracle
