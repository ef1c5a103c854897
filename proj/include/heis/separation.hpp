#ifndef HEIS_SEPARATION_HPP
#define HEIS_SEPARATION_HPP

// Numerical probes of three geometric facts about large spheres:
// separation of the directions of incident shell centres, the inner ball
// between a far point and a nearby one, and chains of mutually incident
// thickened spheres with a common point.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/covering.hpp"
#include "heis/errors.hpp"
#include "heis/rng.hpp"

namespace heis {

namespace detail {

inline std::vector<double> random_unit(SplitMix64& g, std::size_t dim) {
  std::vector<double> v(dim);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      x = g.normal();
      s += x * x;
    }
  } while (s < 1e-24);
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

inline bool in_shell(const ContinuousPoint& y, const ContinuousPoint& x, double r, double t) {
  return boundary_contains(y, BallSpec{x, r, t}).inside();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Large-scale separation

inline double lss_bound(double eps) { return 0.5 * (1.0 - std::sqrt(1.0 - eps * eps / 4.0)); }

struct LssConfig {
  ContinuousPoint p, q;
  double t = 1.0, t_tilde = 1.0;
  double r = 1.0, r_tilde = 1.0;
  double eps = 0.5;
  double R = 2.0;
};

struct LssResult {
  bool holds = false;
  double distance = 0.0;  // d(p_hat, q_hat)
  double bound = 0.0;
  double gap = 0.0;       // distance - bound
  Checklist hypotheses;
};

inline Checklist lss_hypotheses(const LssConfig& c) {
  Checklist out;
  const std::size_t n = c.p.dim();
  const ContinuousPoint e = ContinuousPoint::identity(n);
  out.push_back({"t, t~ >= 1", c.t >= 1.0 && c.t_tilde >= 1.0, ""});
  out.push_back({"r >= r~", c.r >= c.r_tilde, ""});
  out.push_back({"r~ >= t t~ R", c.r_tilde >= c.t * c.t_tilde * c.R, ""});
  out.push_back({"r~ >= eps r", c.r_tilde >= c.eps * c.r, ""});
  out.push_back({"0 in boundary_t B_r(p)", detail::in_shell(e, c.p, c.r, c.t), ""});
  out.push_back({"0 in boundary_t~ B_r~(q)", detail::in_shell(e, c.q, c.r_tilde, c.t_tilde), ""});
  out.push_back({"q in boundary_t B_r(p)", detail::in_shell(c.q, c.p, c.r, c.t),
                 "d(p,q) = " + std::to_string(metric_d(c.p, c.q))});
  return out;
}

inline LssResult lss_check(const LssConfig& c) {
  detail::require_same_dim(c.p.dim(), c.q.dim());
  if (c.p.is_identity() || c.q.is_identity()) throw std::invalid_argument("lss_check: p and q must differ from the identity");
  if (!(c.eps > 0.0 && c.eps <= 1.0)) throw std::invalid_argument("lss_check: eps must lie in (0,1]");
  if (!(c.R > 1.0)) throw std::invalid_argument("lss_check: R must exceed 1");
  LssResult res;
  res.hypotheses = lss_hypotheses(c);
  throw_first_failure(res.hypotheses);
  const ContinuousPoint ph = dilate(1.0 / norm(c.p), c.p), qh = dilate(1.0 / norm(c.q), c.q);
  res.distance = metric_d(ph, qh);
  res.bound = lss_bound(c.eps);
  res.gap = res.distance - res.bound;
  res.holds = res.gap >= 0.0;
  return res;
}

/// Random configuration satisfying the hypotheses. The shape parameters are
/// drawn from `seed` alone, so configurations at different R share them.
inline LssConfig random_lss_config(std::uint64_t seed, std::size_t n, double R, double eps) {
  if (n == 0) throw std::invalid_argument("random_lss_config: n must be positive");
  SplitMix64 g(seed);
  const std::size_t dim = 2 * n + 1;
  const ContinuousPoint e = ContinuousPoint::identity(n);
  LssConfig c;
  c.eps = eps;
  c.R = R;
  c.t = g.uniform(1.0, 2.0);
  c.t_tilde = g.uniform(1.0, 2.0);
  c.r_tilde = c.t * c.t_tilde * R * g.uniform(1.0, 2.0);
  c.r = std::max(c.r_tilde, c.r_tilde * g.uniform(1.0, 1.0 / eps));

  for (int attempt = 0;; ++attempt) {
    const auto u = detail::random_unit(g, dim);
    const double s = attempt < 64 ? g.uniform(-c.t, c.t) : 0.0;
    c.p = detail::sphere_point(u, c.r + s);
    if (detail::in_shell(e, c.p, c.r, c.t)) break;
  }
  const auto up = detail::sphere_coords_of(c.p, norm(c.p));
  for (int attempt = 0;; ++attempt) {
    // Path from the direction of p to its antipode through a random
    // orthogonal direction; d(., p) - r changes sign along it.
    auto w = detail::random_unit(g, dim);
    double dot = 0.0;
    for (std::size_t k = 0; k < dim; ++k) dot += w[k] * up[k];
    double wn = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      w[k] -= dot * up[k];
      wn += w[k] * w[k];
    }
    if (wn < 1e-12) continue;
    wn = std::sqrt(wn);
    const double lam = c.r_tilde + (attempt < 64 ? g.uniform(-c.t_tilde, c.t_tilde) : 0.0);
    auto at = [&](double th) {
      std::vector<double> v(dim);
      for (std::size_t k = 0; k < dim; ++k) v[k] = std::cos(th) * up[k] + std::sin(th) * w[k] / wn;
      return detail::sphere_point(v, lam);
    };
    auto f = [&](double th) { return metric_d(at(th), c.p) - c.r; };
    double lo = 0.0, hi = std::numbers::pi;
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) continue;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    c.q = at(0.5 * (lo + hi));
    if (detail::in_shell(e, c.q, c.r_tilde, c.t_tilde) && detail::in_shell(c.q, c.p, c.r, c.t)) break;
    if (attempt > 4096) throw std::runtime_error("random_lss_config: rejection sampling did not terminate");
  }
  return c;
}

struct LssSweep {
  std::size_t trials = 0, failures = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> failing_seeds;
};

inline LssSweep lss_sweep(std::size_t n, double R, double eps, std::size_t trials, std::uint64_t seed) {
  LssSweep s;
  s.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t si = stream_seed(seed, i);
    const LssResult r = lss_check(random_lss_config(si, n, R, eps));
    s.min_gap = std::min(s.min_gap, r.gap);
    if (!r.holds) {
      ++s.failures;
      s.failing_seeds.push_back(si);
    }
  }
  return s;
}

struct LssThreshold {
  double R_bar = 0.0;    // smallest R found at which the whole family holds
  bool bracketed = false;  // false if the family already holds at R_lo or fails at R_hi
  std::size_t family = 0;
};

/// Bisection in log R on a fixed family of shapes.
inline LssThreshold lss_empirical_threshold(std::size_t n, double eps, std::size_t family, std::uint64_t seed,
                                            double R_lo = 1.01, double R_hi = 1e4, int iterations = 30) {
  auto all_hold = [&](double R) { return lss_sweep(n, R, eps, family, seed).failures == 0; };
  LssThreshold out;
  out.family = family;
  if (all_hold(R_lo)) {
    out.R_bar = R_lo;
    return out;
  }
  if (!all_hold(R_hi)) {
    out.R_bar = R_hi;
    return out;
  }
  out.bracketed = true;
  for (int it = 0; it < iterations; ++it) {
    const double mid = std::sqrt(R_lo * R_hi);
    (all_hold(mid) ? R_hi : R_lo) = mid;
  }
  out.R_bar = R_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Inner ball

struct CloseballParams {
  double R = 8.0;  // requires d(p, p') > 2 R r
  double C = 1.0;  // branch threshold |z_p_hat| >= 2C / rho (normalised units)
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
};

struct CloseballResult {
  ContinuousPoint q;
  bool pole_branch = false;
  bool verified = false;
  double rho = 0.0;
  double dist_to_p_prime = 0.0;   // d(p', q), must be <= 2r
  double q_max = 0.0;              // max over B_r(q) of the quadratic of B_rho(p); <= 1 iff contained
  double max_sample_ratio = 0.0;   // max d(y, p) / rho over the sphere sample
  std::optional<ContinuousPoint> violation;
};

namespace detail {

inline CloseballResult closeball_unchecked(const ContinuousPoint& p, const ContinuousPoint& pp, double r,
                                           const CloseballParams& prm) {
  const std::size_t n = p.dim();
  CloseballResult res;
  res.rho = metric_d(p, pp);
  // Normalise to r = 1/2 and p' = 0.
  const ContinuousPoint p0 = dilate(1.0 / (2.0 * r), multiply(p, inverse(pp)));
  const double rho0 = norm(p0);
  const ContinuousPoint ph = dilate(1.0 / rho0, p0);
  double zn = 0.0;
  for (const auto& c : ph.z) zn += std::norm(c);
  zn = std::sqrt(zn);
  ContinuousPoint q0 = ContinuousPoint::identity(n);
  if (zn > 0.0 && zn >= 2.0 * prm.C / rho0) {
    for (std::size_t j = 0; j < n; ++j) q0.z[j] = ph.z[j] / zn;
  } else {
    res.pole_branch = true;
    q0.tau = ph.tau < 0.0 ? -1.0 : 1.0;
  }
  res.q = multiply(dilate(2.0 * r, q0), pp);
  res.dist_to_p_prime = metric_d(pp, res.q);
  const bool near = res.dist_to_p_prime <= 2.0 * r + 1e-9;

  const EllipsoidTest et = ball_meets_sphere(multiply(res.q, inverse(p)), res.rho, r);
  res.q_max = et.q_max;
  const bool trs_ok = et.q_max <= 1.0 + kQuadraticSlack;

  SplitMix64 g(prm.seed);
  const std::size_t dim = 2 * n + 1;
  bool samples_ok = true;
  auto probe = [&](const std::vector<double>& v) {
    const ContinuousPoint y = multiply(sphere_point(v, r), res.q);
    const double ratio = metric_d(y, p) / res.rho;
    res.max_sample_ratio = std::max(res.max_sample_ratio, ratio);
    if (ratio > 1.0 + 1e-12 && samples_ok) {
      samples_ok = false;
      res.violation = y;
    }
  };
  for (std::size_t k = 0; k < dim; ++k)
    for (double s : {1.0, -1.0}) {
      std::vector<double> v(dim, 0.0);
      v[k] = s;
      probe(v);
    }
  for (std::size_t i = 0; i < prm.samples; ++i) probe(random_unit(g, dim));
  if (!trs_ok && samples_ok) res.violation = multiply(et.argmax, p);
  res.verified = near && trs_ok && samples_ok;
  return res;
}

}  // namespace detail

inline CloseballResult closeball_witness(const ContinuousPoint& p, const ContinuousPoint& p_prime, double r,
                                         const CloseballParams& prm) {
  detail::require_same_dim(p.dim(), p_prime.dim());
  if (!(r > 0.0)) throw std::invalid_argument("closeball_witness: r must be positive");
  if (!(prm.C > 0.0)) throw std::invalid_argument("closeball_witness: C must be positive");
  const double rho = metric_d(p, p_prime);
  if (!(rho > 2.0 * prm.R * r))
    throw HypothesisError("rho > 2 R r", "rho = " + std::to_string(rho) + ", 2 R r = " + std::to_string(2.0 * prm.R * r));
  return detail::closeball_unchecked(p, p_prime, r, prm);
}

struct CloseballCalibration {
  double C = 1.0;
  double R = 0.0;  // measured threshold in units of 2r, with margin
  std::vector<double> direction_thresholds;
};

/// Smallest normalised distance above which the construction verifies, per
/// direction (doubling, then bisection), maximised over directions. Half of
/// the directions are taken close to the poles.
inline CloseballCalibration closeball_measure_R(std::size_t n, double C, std::size_t directions, std::uint64_t seed,
                                                double margin = 1.25) {
  CloseballCalibration cal;
  cal.C = C;
  CloseballParams prm;
  prm.C = C;
  prm.samples = 256;
  const std::size_t dim = 2 * n + 1;
  const ContinuousPoint e = ContinuousPoint::identity(n);
  SplitMix64 g(seed);
  for (std::size_t i = 0; i < directions; ++i) {
    auto v = detail::random_unit(g, dim);
    if (i % 2 == 1) {
      const double tilt = std::pow(10.0, g.uniform(-6.0, -1.0));
      for (std::size_t k = 0; k < 2 * n; ++k) v[k] *= tilt;
      double s = 0.0;
      for (double x : v) s += x * x;
      for (double& x : v) x /= std::sqrt(s);
    }
    prm.seed = stream_seed(seed, i);
    auto ok = [&](double rho) { return detail::closeball_unchecked(detail::sphere_point(v, rho), e, 0.5, prm).verified; };
    double hi = 1.0;
    while (!(ok(hi) && ok(2.0 * hi) && ok(4.0 * hi)) && hi < 1e12) hi *= 2.0;
    double lo = hi / 2.0;
    for (int it = 0; it < 30; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    cal.direction_thresholds.push_back(hi);
    cal.R = std::max(cal.R, hi);
  }
  cal.R *= margin;
  return cal;
}

/// Tries C = 2^k for k in [k_lo, k_hi] and keeps the C with the smallest R.
inline CloseballCalibration closeball_calibrate(std::size_t n, std::size_t directions, std::uint64_t seed, int k_lo = -3,
                                                int k_hi = 3) {
  std::optional<CloseballCalibration> best;
  for (int k = k_lo; k <= k_hi; ++k) {
    auto c = closeball_measure_R(n, std::ldexp(1.0, k), directions, seed);
    if (!best || c.R < best->R) best = std::move(c);
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Chains of incident thickened spheres

struct ChainConfig {
  std::vector<ContinuousPoint> points;
  std::vector<double> radii;
  std::vector<double> thick;
  double R = 2.0;

  std::size_t size() const noexcept { return points.size(); }
};

/// Conditions (a)-(c); (c) is certified with boundary_contains.
inline Checklist chain_conditions(const ChainConfig& c) {
  Checklist out;
  if (c.radii.size() != c.size() || c.thick.size() != c.size())
    throw std::invalid_argument("ChainConfig: field lengths differ");
  double prod = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string tag = " at i=" + std::to_string(i + 1);
    out.push_back({"(a) t(i) >= 1" + tag, c.thick[i] >= 1.0, ""});
    prod *= c.thick[i];
    out.push_back({"(b) r(i) >= t(1)...t(i) R" + tag, c.radii[i] >= prod * c.R, ""});
    bool inc = true;
    for (std::size_t j = 0; j < i && inc; ++j) inc = detail::in_shell(c.points[i], c.points[j], c.radii[j], c.thick[j]);
    out.push_back({"(c) x_i in earlier shells" + tag, inc, ""});
  }
  return out;
}

inline bool in_all_shells(const ContinuousPoint& y, const ChainConfig& c) {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!detail::in_shell(y, c.points[j], c.radii[j], c.thick[j])) return false;
  return true;
}

struct ChainCertificate {
  std::uint64_t seed = 0;
  ChainConfig config;
  ContinuousPoint witness;  // certified in every shell
};

struct IntersectionReport {
  std::size_t n = 1;
  double R = 2.0;
  std::size_t trials = 0, max_chain = 0;
  std::size_t longest = 0;
  std::vector<std::size_t> reached;                 // reached[m]: trials with a certified chain of length m
  std::vector<ChainCertificate> certificates;       // first certificate for each length >= 2
};

namespace detail {

/// Chain moved to x_1 = 0, r(1) = 1 by right translation and dilation.
struct NormalisedChain {
  std::vector<ContinuousPoint> x;
  std::vector<double> r, t;
  ContinuousPoint anchor;
  double scale = 1.0;

  ContinuousPoint to_world(const ContinuousPoint& u) const { return multiply(dilate(scale, u), anchor); }
  ContinuousPoint from_world(const ContinuousPoint& y) const { return dilate(1.0 / scale, multiply(y, inverse(anchor))); }
};

inline NormalisedChain normalise(const ChainConfig& c) {
  NormalisedChain nc;
  nc.anchor = c.points.front();
  nc.scale = c.radii.front();
  for (std::size_t j = 0; j < c.size(); ++j) {
    nc.x.push_back(nc.from_world(c.points[j]));
    nc.r.push_back(c.radii[j] / nc.scale);
    nc.t.push_back(c.thick[j] / nc.scale);
  }
  return nc;
}

inline ContinuousPoint from_vec(const Eigen::Vector3d& v) { return {{Complex(v[0], v[1])}, v[2]}; }

/// Levenberg-Marquardt on the residuals (d(u, x_j) - r_j) / t_j, n = 1.
inline ContinuousPoint least_squares_on_spheres(const NormalisedChain& nc, Eigen::Vector3d u) {
  const std::size_t m = nc.x.size();
  auto residual = [&](const Eigen::Vector3d& v) {
    Eigen::VectorXd e(m);
    const ContinuousPoint pt = from_vec(v);
    for (std::size_t j = 0; j < m; ++j) e[j] = (metric_d(pt, nc.x[j]) - nc.r[j]) / nc.t[j];
    return e;
  };
  Eigen::VectorXd e = residual(u);
  double cost = e.squaredNorm(), lambda = 1e-3;
  for (int it = 0; it < 80 && cost > 1e-6; ++it) {
    Eigen::MatrixXd J(m, 3);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(u[k]));
      Eigen::Vector3d a = u, b = u;
      a[k] += h;
      b[k] -= h;
      J.col(k) = (residual(a) - residual(b)) / (2.0 * h);
    }
    const Eigen::Matrix3d H = J.transpose() * J;
    const Eigen::Vector3d gr = J.transpose() * e;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::Matrix3d A = H;
      for (int k = 0; k < 3; ++k) A(k, k) += lambda * std::max(H(k, k), 1e-12);
      const Eigen::Vector3d step = A.ldlt().solve(-gr);
      const Eigen::Vector3d cand = u + step;
      const Eigen::VectorXd ec = residual(cand);
      if (ec.squaredNorm() < cost) {
        u = cand;
        e = ec;
        cost = ec.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  return from_vec(u);
}

/// Points certified in every shell of the chain, from several starts.
inline std::vector<ContinuousPoint> probe_intersection(const ChainConfig& c, SplitMix64& g, std::size_t starts,
                                                       const std::vector<ContinuousPoint>& seeds) {
  const NormalisedChain nc = normalise(c);
  std::vector<Eigen::Vector3d> inits;
  for (const auto& s : seeds) {
    const ContinuousPoint u = nc.from_world(s);
    inits.emplace_back(u.z[0].real(), u.z[0].imag(), u.tau);
  }
  for (std::size_t k = 0; k < starts; ++k) {
    const auto v = random_unit(g, 3);
    inits.emplace_back(v[0], v[1], v[2]);  // a point of the unit sphere about x_1 = 0
  }
  std::vector<ContinuousPoint> found;
  for (const auto& u0 : inits) {
    const ContinuousPoint y = nc.to_world(least_squares_on_spheres(nc, u0));
    if (!in_all_shells(y, c)) continue;
    bool fresh = true;
    for (const auto& f : found) fresh = fresh && metric_d(f, y) > 1e-3 * c.radii.front();
    if (fresh) found.push_back(y);
  }
  return found;
}

struct TrialOutcome {
  std::size_t longest = 0;
  std::vector<ChainCertificate> certs;  // index m-2 holds the length-m certificate
};

inline TrialOutcome run_chain_trial(double R, std::size_t max_chain, std::uint64_t seed) {
  SplitMix64 g(seed);
  TrialOutcome out;
  ChainConfig c;
  c.R = R;
  double prod = g.uniform(1.0, 2.0);
  c.thick.push_back(prod);
  c.radii.push_back(prod * R * g.uniform(1.0, 3.0));
  c.points.push_back(sphere_point(random_unit(g, 3), c.radii[0]));
  // Any point of the first sphere is a witness; the identity is one.
  std::vector<ContinuousPoint> pool{ContinuousPoint::identity(1)};
  out.longest = 1;
  for (std::size_t m = 2; m <= max_chain; ++m) {
    // x_m: a certified point of all previous shells.
    const std::size_t pick = static_cast<std::size_t>(g.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1));
    const ContinuousPoint xm = pool[pick];
    const double tm = g.uniform(1.0, 2.0);
    prod *= tm;
    double rm = prod * R * g.uniform(1.0, 3.0);
    if (pool.size() > 1 && g.uniform01() < 0.5) {
      // Aim the new sphere at another common point.
      std::size_t other = pick;
      while (other == pick) other = static_cast<std::size_t>(g.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1));
      const double d = metric_d(xm, pool[other]);
      if (d >= prod * R) rm = d;
    }
    c.points.push_back(xm);
    c.thick.push_back(tm);
    c.radii.push_back(rm);
    std::vector<ContinuousPoint> seeds;
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (k != pick) seeds.push_back(pool[k]);
    pool = probe_intersection(c, g, 6, seeds);
    if (pool.empty()) break;
    out.longest = m;
    out.certs.push_back({seed, c, pool.front()});
  }
  return out;
}

}  // namespace detail

/// Randomised search at n = 1. Nonemptiness is certified by exhibiting a
/// point inside every shell; emptiness is never asserted.
inline IntersectionReport intersection_search(std::size_t n, double R, std::size_t trials, std::size_t max_chain,
                                              std::uint64_t seed, unsigned workers = 0) {
  if (!(R > 1.0)) throw std::invalid_argument("intersection_search: R must exceed 1");
  if (n != 1) throw std::invalid_argument("intersection_search: only n = 1 is supported");
  if (max_chain < 1) throw std::invalid_argument("intersection_search: max_chain must be >= 1");
  IntersectionReport rep;
  rep.n = n;
  rep.R = R;
  rep.trials = trials;
  rep.max_chain = max_chain;
  rep.reached.assign(max_chain + 1, 0);

  std::vector<detail::TrialOutcome> outcomes(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < trials; i += workers)
        outcomes[i] = detail::run_chain_trial(R, max_chain, stream_seed(seed, i));
    });
  for (auto& th : pool) th.join();

  std::vector<bool> have(max_chain + 1, false);
  for (const auto& o : outcomes) {
    rep.longest = std::max(rep.longest, o.longest);
    for (std::size_t m = 1; m <= o.longest; ++m) ++rep.reached[m];
    for (const auto& cert : o.certs) {
      const std::size_t m = cert.config.size();
      if (!have[m]) {
        have[m] = true;
        rep.certificates.push_back(cert);
      }
    }
  }
  std::sort(rep.certificates.begin(), rep.certificates.end(),
            [](const ChainCertificate& a, const ChainCertificate& b) { return a.config.size() < b.config.size(); });
  return rep;
}

}  // namespace heis

#endif  // HEIS_SEPARATION_HPP
