#ifndef HEIS_TRS_HPP
#define HEIS_TRS_HPP

// Global minimisation of a (possibly indefinite) quadratic over the closed
// Euclidean unit ball:  minimise x'Mx + 2g'x  subject to |x| <= 1.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace heis::detail {

struct TrsSolution {
  Eigen::VectorXd x;
  double value = 0.0;  // x'Mx + 2g'x
};

inline TrsSolution solve_trs(const Eigen::MatrixXd& M, const Eigen::VectorXd& g) {
  const Eigen::Index d = g.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const Eigen::VectorXd lam = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& V = es.eigenvectors();
  const Eigen::VectorXd gam = V.transpose() * g;
  const double scale = std::max({1.0, lam.cwiseAbs().maxCoeff(), g.norm()});
  const double eps = 1e-14 * scale;

  auto x_of = [&](double mu) {
    Eigen::VectorXd c(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double den = lam[i] + mu;
      c[i] = den > eps ? -gam[i] / den : 0.0;
    }
    return c;
  };
  auto finish = [&](const Eigen::VectorXd& c) {
    TrsSolution s;
    s.x = V * c;
    s.value = s.x.dot(M * s.x) + 2.0 * g.dot(s.x);
    return s;
  };

  // Interior stationary point of a convex objective.
  if (lam[0] > eps) {
    const Eigen::VectorXd c = x_of(0.0);
    if (c.norm() <= 1.0) return finish(c);
  }
  // Boundary: |x(mu)| = 1 for mu > max(0, -lam_min); |x(mu)| decreases in mu.
  const double lo0 = std::max(0.0, -lam[0]);
  double lo = lo0, hi = lo0 + g.norm() + eps + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (x_of(mid).norm() > 1.0) lo = mid;
    else hi = mid;
  }
  Eigen::VectorXd c = x_of(hi);
  const double cn = c.norm();
  if (cn < 1.0 && hi - lo0 <= 1e-9 * scale) {
    // Hard case: complete along the bottom eigenvector.
    for (Eigen::Index i = 0; i < d; ++i)
      if (lam[i] - lam[0] <= eps) c[i] = 0.0;
    c[0] += std::sqrt(std::max(0.0, 1.0 - c.squaredNorm()));
  } else if (cn > 0.0) {
    c /= cn;
  }
  return finish(c);
}

}  // namespace heis::detail

#endif  // HEIS_TRS_HPP
