#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/classical.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/quantum.hpp"

namespace rendezvous {

/// One measurement angle per site for the shared EPR pair. Outcome bit 0 is
/// move rank 0.
struct QubitStrategy {
  std::vector<double> angles;

  int size() const noexcept { return static_cast<int>(angles.size()); }
  double at(Vertex v) const { return angles.at(v - 1); }
};

/// Euler-angle triple per site for the shared qutrit pair. Sites may share a
/// triple through `slot`: site v uses triples[slot[v-1]].
class QutritStrategy {
 public:
  QutritStrategy() = default;
  explicit QutritStrategy(std::vector<EulerAnglesd> per_site);
  QutritStrategy(std::vector<EulerAnglesd> triples, std::vector<int> slot);

  int size() const noexcept { return static_cast<int>(slot_.size()); }
  int free_triples() const noexcept { return static_cast<int>(triples_.size()); }
  bool tied() const noexcept { return free_triples() != size(); }

  const EulerAnglesd& at(Vertex v) const { return triples_.at(slot_.at(v - 1)); }
  const std::vector<EulerAnglesd>& triples() const noexcept { return triples_; }
  const std::vector<int>& slots() const noexcept { return slot_; }

  /// One triple per site, ties expanded.
  std::vector<EulerAnglesd> per_site() const;

 private:
  std::vector<EulerAnglesd> triples_;
  std::vector<int> slot_;
};

/// Any strategy the evaluators and simulator accept.
using Strategy = std::variant<ClassicalStrategy, QubitStrategy, QutritStrategy>;

/// Number of move ranks the strategy chooses between.
int strategy_arity(const Strategy& s);

/// Throws ErrorKind::Arity when the strategy does not fit the graph.
void check_fits(const Graph& g, const Strategy& s);

/// Joint outcome provider for a symmetric strategy: both players use `s`.
JointProvider joint_provider(const Strategy& s);

/// Slot map that ties every component of g to the first one through a
/// rank-preserving isomorphism. Empty when g is connected or some component
/// has no such isomorphism onto the first.
std::optional<std::vector<int>> component_tying(const Graph& g);

JointProvider qubit_joint(QubitStrategy s);
JointProvider qutrit_joint(QutritStrategy s);

/// Ramp ansatz on C_n: theta_j = (j-1) theta, plus pi at sites 1 and n when
/// `endpoint_offsets` is set. The offset-free ramp is kept as a baseline.
QubitStrategy cycle_ansatz(int n, double theta, bool endpoint_offsets = true);

/// Angles 0, pi/3, 2pi/3 on C3.
QubitStrategy k3_optimal_strategy();

/// Published K4 angle set (radians, x/y/z Euler angles per site).
QutritStrategy table3_k4_strategy();

/// Closed-form win probability of the offset ramp ansatz on C_n.
double cycle_win_prob_closed(int n, double theta, bool e);

struct ThetaOptimum {
  double theta_max = 0.0;           // smallest maximizer
  double p_max = 0.0;
  std::vector<double> all_maxima;   // ascending, every maximizer within 1e-9
};

/// Maximizes cycle_win_prob_closed over [0, pi] by a 10^4-point scan followed
/// by golden-section refinement around every grid-local maximum.
ThetaOptimum optimal_theta(int n, bool e);

struct Asymptote {
  double n_p_limit = 0.0;
  double theta_limit = 0.0;
};

/// Large-n limit of n * P_max and the angle achieving it.
Asymptote cycle_asymptote(bool e);

/// Non-signalling ceiling on C_n: 2/n, or 3/n with edge meetings.
double nst_bound(int n, bool e);

struct NstWitness {
  int nu = 0;
  int mu = 0;
  double theta_max = 0.0;
};

/// Searches 1 <= nu <= 100, 0 <= mu <= 100 for (n-2)/2 = (2mu+1)/(2nu+1).
std::optional<NstWitness> nst_attainable(int n);

struct SharedRandomnessResult {
  std::string description;
  Eigen::Matrix2d role_bits;  // joint distribution of the two role bits
  double win_probability = 0.0;
};

/// C3 with distinct starts and no edge meetings. Each player reads one half
/// of an anticorrelated pair; bit 0 walks clockwise (v -> v+1), bit 1
/// counter-clockwise.
SharedRandomnessResult shared_randomness_strategy_c3();

/// Joint provider for the role-splitting protocol on any cycle.
JointProvider role_split_joint(const Graph& cycle);

}  // namespace rendezvous
