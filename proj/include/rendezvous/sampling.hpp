#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rendezvous/quantum.hpp"

namespace rendezvous {

using Rng = std::mt19937_64;

/// Generator for stream `stream` derived from a master seed. Streams with
/// different indices are decorrelated through std::seed_seq.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Draws (row, col) pairs from a joint distribution. Construction copies the
/// matrix into a row-major cumulative table; each draw consumes exactly one
/// uniform variate, so sequences are fixed by seed and draw index.
class OutcomeSampler {
 public:
  OutcomeSampler() = default;
  explicit OutcomeSampler(const Eigen::MatrixXd& dist);

  std::pair<int, int> operator()(Rng& rng) const;

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cumulative_;
};

std::pair<int, int> sample_outcome(const Eigen::MatrixXd& dist, Rng& rng);

/// Aggregate gate-noise model: the whole circuit fails with probability
/// 1 - (1 - p_gate)^n_gates.
struct NoiseParams {
  double p_gate = 0.0;
  int n_gates = 0;
};

double circuit_failure_probability(const NoiseParams& noise);

/// Single per-gate error rate that keeps circuit_failure_probability inside
/// [band_lo, band_hi] for every gate count in [gates_lo, gates_hi]. Picks the
/// midpoint of the feasible interval in log(1 - p) space; throws
/// ErrorKind::OutOfRange when the band cannot be met by one rate.
double calibrate_gate_error(int gates_lo, int gates_hi, double band_lo,
                            double band_hi);

/// 2-bit readout codes: 0b00, 0b01, 0b10 are S_z = -1, 0, +1; 0b11 lies
/// outside the qutrit subspace.
constexpr int kInvalidReadout = 3;

inline bool is_invalid_readout(int code) noexcept {
  return code == kInvalidReadout;
}

std::string two_bit_code(int code);
int parse_two_bit_code(const std::string& text);

/// Per-shot four-qubit sampler. With probability p_circ the shot is replaced
/// by a uniform draw over all 16 readout pairs, otherwise the ideal
/// distribution is sampled.
class NoisyFourQubitSampler {
 public:
  NoisyFourQubitSampler(const Eigen::Matrix4d& ideal, const NoiseParams& noise);

  std::pair<int, int> operator()(Rng& rng) const;

  double failure_probability() const noexcept { return p_circ_; }

 private:
  OutcomeSampler ideal_;
  double p_circ_ = 0.0;
};

std::pair<int, int> noisy_sample_fourqubit(const EulerAnglesd& a,
                                           const EulerAnglesd& b,
                                           const NoiseParams& noise, Rng& rng);

/// Row-major CSV with header "n,m,p".
void write_outcome_csv(std::ostream& out, const Eigen::MatrixXd& dist);

}  // namespace rendezvous
