#ifndef HEIS_BOUNDARY_HPP
#define HEIS_BOUNDARY_HPP

// Thickened spheres: the t-boundary of B_r(x) is the set of points within
// distance t of the continuous sphere { s : d(s,x) = r }. Membership is
// decided by a certified lower bound |d(y,x) - r|, explicit sphere points
// (witnesses) giving upper bounds, and as a last resort a global test:
// B_t(y) is an ellipsoid, and the extremes of the sphere's defining quadratic
// over it come from two trust-region solves.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heis/balls.hpp"
#include "heis/metric.hpp"
#include "heis/trs.hpp"

namespace heis {

struct BallSpec {
  ContinuousPoint center;
  double radius = 1.0;
  double thickening = 0.0;

  void validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("BallSpec: radius must be positive");
    if (!(thickening >= 0.0)) throw std::invalid_argument("BallSpec: thickening must be nonnegative");
  }
};

enum class Containment {
  InWitness,      // an explicit sphere point lies within t
  InMinimizer,    // the global test found a sphere point within t
  OutLowerBound,  // |d(y,x) - r| > t, certified
  OutMinimizer,   // the global test found B_t(y) misses the sphere
};

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::InWitness: return "in_witness";
    case Containment::InMinimizer: return "in_minimizer";
    case Containment::OutLowerBound: return "out_lower_bound";
    case Containment::OutMinimizer: return "out_minimizer";
  }
  return "?";
}

struct BoundaryResult {
  Containment status = Containment::OutLowerBound;
  double lower = 0.0;  // certified lower bound on the distance to the sphere
  double upper = std::numeric_limits<double>::infinity();  // distance to `witness`
  ContinuousPoint witness;  // sphere point realising `upper` (if finite)

  bool inside() const noexcept {
    return status == Containment::InWitness || status == Containment::InMinimizer;
  }
};

inline constexpr double kMinimizerTolerance = 1e-8;

namespace detail {

struct SpherePoint {
  double dist = std::numeric_limits<double>::infinity();
  ContinuousPoint point;  // relative to the centre (sphere about 0)
};

inline void consider(SpherePoint& best, const ContinuousPoint& y, const ContinuousPoint& s) {
  const double d = metric_d(y, s);
  if (d < best.dist) best = {d, s};
}

/// Sphere points reached from y by left translation along the horizontal
/// direction u: (lambda u) * y lies on { d(.,0) = r } where
/// (r^2 + g^2) l^2 + 2 (r^2 b + tau g) l + (r^2 |z|^2 + tau^2 - r^4) = 0,
/// b = Re<z,u>, g = Im<u,z>/2. The move has length |lambda|.
inline void horizontal_witness(SpherePoint& best, const ContinuousPoint& y, const std::vector<Complex>& u, double r) {
  double z2 = 0.0;
  for (const auto& c : y.z) z2 += std::norm(c);
  const double beta = hermitian(y.z, u).real();
  const double gamma = 0.5 * hermitian(u, y.z).imag();
  const double r2 = r * r;
  const double A = r2 + gamma * gamma;
  const double B = 2.0 * (r2 * beta + y.tau * gamma);
  const double C = r2 * z2 + y.tau * y.tau - r2 * r2;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  // Stable roots.
  const double q = -0.5 * (B + std::copysign(sq, B));
  std::array<double, 2> roots{q / A, q != 0.0 ? C / q : -B / (2.0 * A)};
  for (double lam : roots) {
    if (!std::isfinite(lam)) continue;
    std::vector<Complex> g(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) g[j] = lam * u[j];
    consider(best, y, multiply(ContinuousPoint{g, 0.0}, y));
  }
}

/// Cheap explicit sphere points near y (sphere of radius r about 0).
inline SpherePoint sphere_witnesses(const ContinuousPoint& y, double r) {
  SpherePoint best;
  const std::size_t n = y.dim();
  const double D = norm(y);
  if (D == 0.0) {
    std::vector<Complex> z(n);
    best = {r, ContinuousPoint{z, r * r}};
    return best;
  }
  // Radial dilation.
  consider(best, y, dilate(r / D, y));

  // Vertical moves (0, s) * y keep z fixed.
  double z2 = 0.0;
  for (const auto& c : y.z) z2 += std::norm(c);
  if (z2 <= r * r) {
    const double h = std::sqrt(std::max(0.0, r * r * r * r - r * r * z2));
    consider(best, y, ContinuousPoint{y.z, h});
    consider(best, y, ContinuousPoint{y.z, -h});
  }
  // Horizontal scaling of z with tau fixed.
  const double tau_cap = r * r;
  if (std::abs(y.tau) <= tau_cap && z2 > 0.0) {
    const double w2 = r * r - y.tau * y.tau / (r * r);
    const double s = std::sqrt(std::max(0.0, w2) / z2);
    std::vector<Complex> w(y.z);
    for (auto& c : w) c *= s;
    consider(best, y, ContinuousPoint{w, y.tau});
  }
  // Left translations along coordinate and radial horizontal directions.
  std::vector<Complex> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(u.begin(), u.end(), Complex{});
    u[j] = 1.0;
    horizontal_witness(best, y, u, r);
    u[j] = Complex(0.0, 1.0);
    horizontal_witness(best, y, u, r);
  }
  if (z2 > 0.0) {
    const double zn = std::sqrt(z2);
    for (std::size_t j = 0; j < n; ++j) u[j] = y.z[j] / zn;
    horizontal_witness(best, y, u, r);
    for (std::size_t j = 0; j < n; ++j) u[j] = y.z[j] / zn * Complex(0.0, 1.0);
    horizontal_witness(best, y, u, r);
  }
  return best;
}

/// Euclidean unit vector v in R^{2n+1} -> point on the sphere of radius r.
inline ContinuousPoint sphere_point(const std::vector<double>& v, double r) {
  const std::size_t n = (v.size() - 1) / 2;
  std::vector<Complex> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = Complex(r * v[j], r * v[n + j]);
  return {std::move(z), r * r * v[2 * n]};
}

inline std::vector<double> sphere_coords_of(const ContinuousPoint& s, double r) {
  const std::size_t n = s.dim();
  std::vector<double> v(2 * n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = s.z[j].real() / r;
    v[n + j] = s.z[j].imag() / r;
  }
  v[2 * n] = s.tau / (r * r);
  return v;
}

inline void project(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s == 0.0) {
    v.back() = 1.0;
    return;
  }
  for (double& x : v) x /= s;
}

/// Projected gradient descent of f over the Euclidean unit sphere, from v.
template <class F>
double descend_on_sphere(F&& f, std::vector<double>& v, double tol = kMinimizerTolerance, int max_iter = 400) {
  project(v);
  double fv = f(v);
  const std::size_t dim = v.size();
  std::vector<double> g(dim), trial(dim);
  double step = 0.25;
  for (int it = 0; it < max_iter; ++it) {
    const double h = 1e-7;
    for (std::size_t i = 0; i < dim; ++i) {
      trial = v;
      trial[i] += h;
      const double fp = f(trial);
      trial[i] -= 2 * h;
      const double fm = f(trial);
      g[i] = (fp - fm) / (2 * h);
    }
    // Tangential component.
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dot += g[i] * v[i];
    double gn = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      g[i] -= dot * v[i];
      gn += g[i] * g[i];
    }
    gn = std::sqrt(gn);
    if (gn < 1e-14) break;
    bool improved = false;
    while (step > 1e-12) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = v[i] - step * g[i] / gn;
      project(trial);
      const double ft = f(trial);
      if (ft < fv) {
        const double gain = fv - ft;
        v = trial;
        fv = ft;
        improved = true;
        step = std::min(step * 2.0, 1.0);
        if (gain < tol * 1e-3) return fv;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return fv;
}

/// Minimises d(y, s) over the sphere of radius r about 0 from 2n+2 axis
/// starts plus any seed points.
inline SpherePoint minimize_sphere_distance(const ContinuousPoint& y, double r,
                                            const std::vector<ContinuousPoint>& seeds = {}) {
  const std::size_t n = y.dim();
  const std::size_t dim = 2 * n + 1;
  auto f = [&](const std::vector<double>& v) { return metric_d(y, sphere_point(v, r)); };
  std::vector<std::vector<double>> starts;
  for (const auto& s : seeds) starts.push_back(sphere_coords_of(s, r));
  for (int sign : {1, -1}) {
    std::vector<double> v(dim, 0.0);
    v[2 * n] = sign;
    starts.push_back(v);
  }
  for (std::size_t j = 0; j < 2 * n; ++j) {
    std::vector<double> v(dim, 0.0);
    v[j] = 1.0;
    starts.push_back(v);
  }
  SpherePoint best;
  for (auto& v : starts) {
    const double val = descend_on_sphere(f, v);
    if (val < best.dist) best = {val, sphere_point(v, r)};
  }
  return best;
}

/// Range of q(u) = |u_z|^2/r^2 + u_tau^2/r^4 over the ball B_rho(y). The ball
/// is the image of the Euclidean unit ball under x -> delta_rho(x) * y, which
/// is affine, and the sphere of radius r about 0 is { q = 1 }. Since B_rho(y)
/// is connected it meets the sphere iff min q <= 1 <= max q.
struct EllipsoidTest {
  bool meets = false;
  double q_min = 0.0, q_max = 0.0;
  std::optional<ContinuousPoint> witness;  // a sphere point inside B_rho(y)
  ContinuousPoint argmin, argmax;          // points of B_rho(y) attaining q_min, q_max
};

inline constexpr double kQuadraticSlack = 1e-12;

inline EllipsoidTest ball_meets_sphere(const ContinuousPoint& y, double r, double rho) {
  const std::size_t n = y.dim();
  const Eigen::Index d = static_cast<Eigen::Index>(2 * n + 1);
  const double r2 = r * r, r4 = r2 * r2;
  // u_z = rho x_z + w,  u_tau = a'x + sigma.
  Eigen::VectorXd a(d), wh(d);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = 0.5 * rho * y.z[j].imag();
    a[n + j] = -0.5 * rho * y.z[j].real();
    wh[j] = y.z[j].real();
    wh[n + j] = y.z[j].imag();
  }
  a[2 * n] = rho * rho;
  wh[2 * n] = 0.0;
  Eigen::MatrixXd Q = (a * a.transpose()) / r4;
  for (std::size_t j = 0; j < 2 * n; ++j) Q(j, j) += rho * rho / r2;
  const Eigen::VectorXd p = rho * wh / r2 + y.tau * a / r4;
  const double c0 = wh.squaredNorm() / r2 + y.tau * y.tau / r4;

  const TrsSolution lo = solve_trs(Q, p);
  const TrsSolution hi = solve_trs(-Q, -p);
  EllipsoidTest out;
  out.q_min = c0 + lo.value;
  out.q_max = c0 - hi.value;
  out.meets = out.q_min <= 1.0 + kQuadraticSlack && out.q_max >= 1.0 - kQuadraticSlack;
  auto image = [&](const Eigen::VectorXd& x) {
    std::vector<Complex> gz(n);
    for (std::size_t j = 0; j < n; ++j) gz[j] = Complex(rho * x[j], rho * x[n + j]);
    return multiply(ContinuousPoint{gz, rho * rho * x[2 * n]}, y);
  };
  out.argmin = image(lo.x);
  out.argmax = image(hi.x);
  if (!out.meets) return out;

  // Walk from y towards the extremal point on the far side of the sphere.
  const Eigen::VectorXd& xs = c0 >= 1.0 ? lo.x : hi.x;
  const double A = xs.dot(Q * xs), B = 2.0 * p.dot(xs), C = c0 - 1.0;
  double s = 0.0;
  if (A > 0.0) {
    const double disc = std::max(0.0, B * B - 4.0 * A * C);
    const double s1 = (-B - std::sqrt(disc)) / (2.0 * A), s2 = (-B + std::sqrt(disc)) / (2.0 * A);
    s = (s1 >= 0.0 && s1 <= 1.0) ? s1 : std::clamp(s2, 0.0, 1.0);
  }
  std::vector<Complex> gz(n);
  for (std::size_t j = 0; j < n; ++j) gz[j] = Complex(rho * s * xs[j], rho * s * xs[n + j]);
  out.witness = multiply(ContinuousPoint{gz, rho * rho * s * xs[2 * n]}, y);
  return out;
}

}  // namespace detail

/// Classifies y against the t-boundary of B_r(x).
inline BoundaryResult boundary_contains(const ContinuousPoint& y, const BallSpec& spec) {
  spec.validate();
  const double r = spec.radius, t = spec.thickening;
  const ContinuousPoint rel = multiply(y, inverse(spec.center));  // sphere now about 0
  const double D = norm(rel);
  BoundaryResult res;
  res.lower = std::abs(D - r);

  auto finish = [&](const detail::SpherePoint& sp, Containment in_status) {
    res.upper = sp.dist;
    res.witness = multiply(sp.point, spec.center);
    res.status = sp.dist <= t ? in_status : Containment::OutMinimizer;
  };

  if (D == 0.0) {
    // Every sphere point is at distance exactly r.
    res.lower = r;
    res.upper = r;
    res.witness = multiply(detail::sphere_witnesses(rel, r).point, spec.center);
    res.status = r <= t ? Containment::InWitness : Containment::OutLowerBound;
    return res;
  }
  if (res.lower > t) {
    res.status = Containment::OutLowerBound;
    return res;
  }
  const detail::SpherePoint w = detail::sphere_witnesses(rel, r);
  if (w.dist <= t) {
    finish(w, Containment::InWitness);
    return res;
  }
  // Decide with the global test at rho = t.
  const detail::EllipsoidTest e = detail::ball_meets_sphere(rel, r, t);
  if (e.meets && e.witness) {
    res.witness = multiply(*e.witness, spec.center);
    res.upper = std::min(w.dist, metric_d(rel, *e.witness));
    res.status = Containment::InMinimizer;
  } else {
    res.lower = std::max(res.lower, t);
    res.upper = w.dist;
    res.witness = multiply(w.point, spec.center);
    res.status = Containment::OutMinimizer;
  }
  return res;
}

/// Lattice version: points exactly on the sphere (exact test) are inside for
/// every t >= 0.
inline BoundaryResult boundary_contains(const LatticePoint& y, const LatticePoint& center, std::int64_t radius_sq,
                                        double t) {
  if (compare_distance_sq(y, center, radius_sq) == 0) {
    BoundaryResult res;
    res.status = Containment::InWitness;
    res.lower = res.upper = 0.0;
    res.witness = y.to_continuous();
    return res;
  }
  return boundary_contains(y.to_continuous(),
                           BallSpec{center.to_continuous(), std::sqrt(static_cast<double>(radius_sq)), t});
}

struct BoundaryCount {
  std::uint64_t inside = 0;
  std::uint64_t by_witness = 0;
  std::uint64_t by_minimizer = 0;
  std::uint64_t minimizer_out = 0;
};

/// Visits the lattice points of the t-boundary of B_k(0); they all lie in
/// B_{k + ceil(t)}.
template <class F>
BoundaryCount for_each_t_boundary_point(std::size_t n, std::int64_t k, double t, F&& visit,
                                        std::uint64_t cap = kDefaultCap) {
  if (k < 1) throw std::invalid_argument("t_boundary: k must be >= 1");
  if (!(t >= 0.0)) throw std::invalid_argument("t_boundary: t must be nonnegative");
  const auto outer = k + static_cast<std::int64_t>(std::ceil(t));
  const FiberSet candidates = ball_fibers(n, outer, nullptr, cap);
  const LatticePoint origin = LatticePoint::identity(n);
  BoundaryCount c;
  candidates.for_each_point([&](const LatticePoint& y) {
    const double D = norm(y);
    if (std::abs(D - static_cast<double>(k)) > t + 1e-9) return;
    const BoundaryResult r = boundary_contains(y, origin, k * k, t);
    if (r.status == Containment::OutMinimizer) ++c.minimizer_out;
    if (!r.inside()) return;
    ++c.inside;
    if (r.status == Containment::InWitness) ++c.by_witness;
    else ++c.by_minimizer;
    visit(y);
  });
  return c;
}

inline std::uint64_t t_boundary_count(std::size_t n, std::int64_t k, double t, std::uint64_t cap = kDefaultCap) {
  return for_each_t_boundary_point(n, k, t, [](const LatticePoint&) {}, cap).inside;
}

}  // namespace heis

#endif  // HEIS_BOUNDARY_HPP
