#pragma once

// Exact statevector mathematics for the shared resources used by the
// strategies: an EPR qubit pair, a maximally entangled qutrit pair, and the
// four-qubit embedding of the qutrit pair. Everything here is a pure function
// templated on the real scalar type.
//
// Outcome matrices are indexed [alice][bob]. For qubits the index is the
// measured bit; for qutrits it is the move rank, i.e. S_z = -1, 0, +1 maps to
// 0, 1, 2. Four-qubit matrices are indexed by the 2-bit code 00, 01, 10, 11.

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace rendezvous {

template <class Scalar>
struct EulerAngles {
  Scalar alpha{0};  // about x
  Scalar beta{0};   // about y
  Scalar gamma{0};  // about z

  friend bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

using EulerAnglesd = EulerAngles<double>;

template <class Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <class Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Single-qubit rotation exp(-i theta sigma_y / 2). Real-valued.
template <class Scalar>
Matrix2<Scalar> ry(Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(theta / 2), s = sin(theta / 2);
  Matrix2<Scalar> r;
  r << c, -s, s, c;
  return r;
}

/// (|00> + |11>) / sqrt(2), Alice's qubit most significant.
template <class Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 1> epr_state() {
  using std::sqrt;
  Eigen::Matrix<std::complex<Scalar>, 4, 1> psi =
      Eigen::Matrix<std::complex<Scalar>, 4, 1>::Zero();
  psi(0) = psi(3) = std::complex<Scalar>(1 / sqrt(Scalar(2)));
  return psi;
}

/// Computational-basis probabilities of a two-party pure state, reshaped to
/// a dA x dB matrix with Alice's index as the row.
template <int DimA, int DimB, class Derived>
Eigen::Matrix<typename Derived::RealScalar, DimA, DimB> joint_probabilities(
    const Eigen::MatrixBase<Derived>& psi) {
  Eigen::Matrix<typename Derived::RealScalar, DimA, DimB> p;
  for (int n = 0; n < DimA; ++n) {
    for (int m = 0; m < DimB; ++m) p(n, m) = std::norm(psi(n * DimB + m));
  }
  return p;
}

/// Joint outcome distribution of the EPR pair after R_y(theta_a) on Alice's
/// qubit and R_y(theta_b) on Bob's. Depends only on theta_a - theta_b.
template <class Scalar>
Matrix2<Scalar> outcome_matrix_qubit(Scalar theta_a, Scalar theta_b) {
  const Matrix4<std::complex<Scalar>> u =
      Eigen::kroneckerProduct(ry(theta_a), ry(theta_b))
          .template cast<std::complex<Scalar>>();
  return joint_probabilities<2, 2>(u * epr_state<Scalar>());
}

/// (|01> + |10>) / sqrt(2) measured without rotation: the two bits always
/// disagree, each assignment with probability 1/2.
template <class Scalar>
Matrix2<Scalar> anticorrelated_pair_outcomes() {
  using std::sqrt;
  Eigen::Matrix<std::complex<Scalar>, 4, 1> psi =
      Eigen::Matrix<std::complex<Scalar>, 4, 1>::Zero();
  psi(1) = psi(2) = std::complex<Scalar>(1 / sqrt(Scalar(2)));
  return joint_probabilities<2, 2>(psi);
}

/// The SO(3) Euler rotation as written in the standard spin-1 basis order
/// (S_z = +1, 0, -1).
template <class Scalar>
Matrix3<Scalar> euler_rotation(const EulerAngles<Scalar>& angles) {
  using std::cos;
  using std::sin;
  const Scalar ca = cos(angles.alpha), sa = sin(angles.alpha);
  const Scalar cb = cos(angles.beta), sb = sin(angles.beta);
  const Scalar cg = cos(angles.gamma), sg = sin(angles.gamma);
  Matrix3<Scalar> r;
  r << cb * cg, sa * sb * cg - ca * sg, ca * sb * cg + sa * sg,  //
      cb * sg, sa * sb * sg + ca * cg, ca * sb * sg - sa * cg,   //
      -sb, sa * cb, ca * cb;
  return r;
}

/// euler_rotation re-expressed in move-rank order (S_z = -1, 0, +1).
template <class Scalar>
Matrix3<Scalar> rank_ordered_rotation(const EulerAngles<Scalar>& angles) {
  return euler_rotation(angles).reverse();
}

/// P[n][m] = |<n| R_a R_b^T |m>|^2 / 3 for the qutrit pair
/// (|-1,-1> + |0,0> + |+1,+1>) / sqrt(3), rows and columns in rank order.
template <class Scalar>
Matrix3<Scalar> outcome_matrix_qutrit(const Matrix3<Scalar>& rank_rot_a,
                                      const Matrix3<Scalar>& rank_rot_b) {
  return (rank_rot_a * rank_rot_b.transpose()).array().square() / Scalar(3);
}

template <class Scalar>
Matrix3<Scalar> outcome_matrix_qutrit(const EulerAngles<Scalar>& a,
                                      const EulerAngles<Scalar>& b) {
  return outcome_matrix_qutrit<Scalar>(rank_ordered_rotation(a),
                                       rank_ordered_rotation(b));
}

/// Two-qubit lift of a qutrit rotation: the rank-ordered block acts on
/// |00>, |01>, |10> (S_z = -1, 0, +1) and |11> is left untouched.
template <class Scalar>
Matrix4<Scalar> embedded_rotation(const EulerAngles<Scalar>& angles) {
  Matrix4<Scalar> r = Matrix4<Scalar>::Zero();
  r.template topLeftCorner<3, 3>() = rank_ordered_rotation(angles);
  r(3, 3) = Scalar(1);
  return r;
}

/// (|00>|00> + |01>|01> + |10>|10>) / sqrt(3) over Alice's two qubits
/// followed by Bob's two qubits.
template <class Scalar>
Eigen::Matrix<std::complex<Scalar>, 16, 1> fourqubit_initial_state() {
  using std::sqrt;
  Eigen::Matrix<std::complex<Scalar>, 16, 1> psi =
      Eigen::Matrix<std::complex<Scalar>, 16, 1>::Zero();
  const std::complex<Scalar> amp(1 / sqrt(Scalar(3)));
  for (int k = 0; k < 3; ++k) psi(k * 4 + k) = amp;
  return psi;
}

/// Joint distribution over both players' 2-bit readouts after the embedded
/// rotations, computed on the full 16-dimensional statevector.
template <class Scalar>
Matrix4<Scalar> outcome_matrix_fourqubit(const EulerAngles<Scalar>& a,
                                         const EulerAngles<Scalar>& b) {
  const Eigen::Matrix<std::complex<Scalar>, 16, 16> u =
      Eigen::kroneckerProduct(embedded_rotation(a), embedded_rotation(b))
          .template cast<std::complex<Scalar>>();
  return joint_probabilities<4, 4>(u * fourqubit_initial_state<Scalar>());
}

/// True when every entry is >= -tol and the total is 1 within tol.
template <class Derived>
bool is_distribution(const Eigen::MatrixBase<Derived>& p,
                     typename Derived::Scalar tol = 1e-12) {
  return (p.array() >= -tol).all() &&
         std::abs(p.sum() - typename Derived::Scalar(1)) <= tol;
}

}  // namespace rendezvous
