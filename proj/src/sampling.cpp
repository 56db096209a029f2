#include "rendezvous/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "rendezvous/error.hpp"

namespace rendezvous {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

OutcomeSampler::OutcomeSampler(const Eigen::MatrixXd& dist)
    : rows_(static_cast<int>(dist.rows())),
      cols_(static_cast<int>(dist.cols())) {
  if (!is_distribution(dist, 1e-9)) {
    throw Error(ErrorKind::Validation, "outcome matrix is not a distribution");
  }
  cumulative_.reserve(dist.size());
  double acc = 0.0;
  for (int n = 0; n < rows_; ++n) {
    for (int m = 0; m < cols_; ++m) {
      acc += std::max(0.0, dist(n, m));
      cumulative_.push_back(acc);
    }
  }
}

std::pair<int, int> OutcomeSampler::operator()(Rng& rng) const {
  // Scaling by the stored total keeps u strictly below the last entry, so
  // the search always lands on a bin of positive mass.
  const double u =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const int idx = static_cast<int>(it - cumulative_.begin());
  return {idx / cols_, idx % cols_};
}

std::pair<int, int> sample_outcome(const Eigen::MatrixXd& dist, Rng& rng) {
  return OutcomeSampler(dist)(rng);
}

double circuit_failure_probability(const NoiseParams& noise) {
  if (!(noise.p_gate >= 0.0 && noise.p_gate <= 1.0) || noise.n_gates < 0) {
    throw Error(ErrorKind::Validation, "noise needs p_gate in [0,1], n_gates >= 0");
  }
  return -std::expm1(noise.n_gates * std::log1p(-noise.p_gate));
}

double calibrate_gate_error(int gates_lo, int gates_hi, double band_lo,
                            double band_hi) {
  if (gates_lo < 1 || gates_hi < gates_lo || !(band_lo > 0.0) ||
      !(band_hi < 1.0) || band_hi < band_lo) {
    throw Error(ErrorKind::Validation, "bad calibration band");
  }
  // Work with q = -log(1 - p_gate). p_circ(n) = 1 - exp(-n q) is increasing
  // in n, so the band holds iff the shallowest circuit reaches band_lo and
  // the deepest stays below band_hi.
  const double q_min = -std::log1p(-band_lo) / gates_lo;
  const double q_max = -std::log1p(-band_hi) / gates_hi;
  if (q_min > q_max) {
    throw Error(ErrorKind::OutOfRange,
                "no single gate error rate fits the requested band");
  }
  return -std::expm1(-0.5 * (q_min + q_max));
}

std::string two_bit_code(int code) {
  if (code < 0 || code > 3) {
    throw Error(ErrorKind::OutOfRange, "2-bit code outside 0..3");
  }
  std::string s = "00";
  s[0] = (code & 2) ? '1' : '0';
  s[1] = (code & 1) ? '1' : '0';
  return s;
}

int parse_two_bit_code(const std::string& text) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') ||
      (text[1] != '0' && text[1] != '1')) {
    throw Error(ErrorKind::Parse, "expected 2-bit code, got '" + text + "'");
  }
  return (text[0] - '0') * 2 + (text[1] - '0');
}

NoisyFourQubitSampler::NoisyFourQubitSampler(const Eigen::Matrix4d& ideal,
                                             const NoiseParams& noise)
    : ideal_(Eigen::MatrixXd(ideal)),
      p_circ_(circuit_failure_probability(noise)) {}

std::pair<int, int> NoisyFourQubitSampler::operator()(Rng& rng) const {
  const bool corrupted =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_circ_;
  if (!corrupted) return ideal_(rng);
  const int code = std::uniform_int_distribution<int>(0, 15)(rng);
  return {code / 4, code % 4};
}

std::pair<int, int> noisy_sample_fourqubit(const EulerAnglesd& a,
                                           const EulerAnglesd& b,
                                           const NoiseParams& noise, Rng& rng) {
  return NoisyFourQubitSampler(outcome_matrix_fourqubit(a, b), noise)(rng);
}

void write_outcome_csv(std::ostream& out, const Eigen::MatrixXd& dist) {
  out << "n,m,p\n";
  out << std::setprecision(17);
  for (Eigen::Index n = 0; n < dist.rows(); ++n) {
    for (Eigen::Index m = 0; m < dist.cols(); ++m) {
      out << n << ',' << m << ',' << dist(n, m) << '\n';
    }
  }
}

}  // namespace rendezvous
