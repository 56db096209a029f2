#pragma once

// Downhill simplex minimizer on dense Eigen vectors. Uses the
// dimension-adaptive coefficients of Gao and Han, which behave much better
// than the textbook ones once the dimension passes ~10.

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace rendezvous {

struct NelderMeadOptions {
  int max_evals = 4000;
  double f_tol = 1e-12;     // stop when best and worst vertices agree this well
  double initial_step = 0.5;
};

template <class Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar f{};
  int evals = 0;
};

template <class Scalar, class F>
NelderMeadResult<Scalar> nelder_mead_minimize(
    F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
    const NelderMeadOptions& opts) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x0.size();
  const Scalar dn = Scalar(n);
  const Scalar alpha = 1;
  const Scalar beta = 1 + 2 / dn;
  const Scalar gamma = Scalar(0.75) - 1 / (2 * dn);
  const Scalar delta = 1 - 1 / dn;

  std::vector<Vec> pts(n + 1, x0);
  std::vector<Scalar> vals(n + 1);
  int evals = 0;
  auto eval = [&](const Vec& x) {
    ++evals;
    return f(x);
  };
  for (Eigen::Index i = 0; i < n; ++i) pts[i + 1](i) += opts.initial_step;
  for (Eigen::Index i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front(), worst = order.back(), second = order[n - 1];
    if (vals[worst] - vals[best] <= opts.f_tol) break;

    Vec centroid = Vec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += pts[order[i]];
    centroid /= dn;

    const Vec xr = centroid + alpha * (centroid - pts[worst]);
    const Scalar fr = eval(xr);
    if (fr < vals[best]) {
      const Vec xe = centroid + beta * (xr - centroid);
      const Scalar fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vec xc = outside ? Vec(centroid + gamma * (xr - centroid))
                           : Vec(centroid - gamma * (centroid - pts[worst]));
    const Scalar fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + delta * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[it - vals.begin()], *it, evals};
}

}  // namespace rendezvous
