#ifndef HEIS_METRIC_HPP
#define HEIS_METRIC_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "heis/group.hpp"

namespace heis {

/// Homogeneous distance: the closed d-ball of radius r about q is the image
/// of the Euclidean unit ball under dilation by r followed by right
/// translation by q.
///
///   d(p,q) = 2^{-1/2} (|z-w|^2 + sqrt(|z-w|^4 + 4 Delta^2))^{1/2},
///   Delta  = tau - sigma - Im<z,w>/2.
inline double metric_d(const ContinuousPoint& p, const ContinuousPoint& q) {
  detail::require_same_dim(p.dim(), q.dim());
  double dz2 = 0.0;
  for (std::size_t j = 0; j < p.dim(); ++j) dz2 += std::norm(p.z[j] - q.z[j]);
  const double delta = p.tau - q.tau - 0.5 * hermitian(p.z, q.z).imag();
  // hypot keeps |z-w|^4 + 4 Delta^2 free of overflow and cancellation.
  return std::sqrt(0.5 * (dz2 + std::hypot(dz2, 2.0 * delta)));
}

inline double metric_d(const LatticePoint& p, const LatticePoint& q) {
  detail::require_same_dim(p.dim(), q.dim());
  std::int64_t dz2 = 0;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    const std::int64_t da = p.a[j] - q.a[j], db = p.b[j] - q.b[j];
    dz2 += da * da + db * db;
  }
  const double two_delta = static_cast<double>(p.m - q.m - symplectic(p, q));
  const double d = static_cast<double>(dz2);
  return std::sqrt(0.5 * (d + std::hypot(d, two_delta)));
}

inline double norm(const ContinuousPoint& p) { return metric_d(p, ContinuousPoint::identity(p.dim())); }
inline double norm(const LatticePoint& p) { return metric_d(p, LatticePoint::identity(p.dim())); }

namespace detail {

using i128 = __int128;

inline i128 checked_mul(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("exact distance test overflows 128-bit range");
  return r;
}
inline i128 checked_add(i128 x, i128 y) {
  i128 r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("exact distance test overflows 128-bit range");
  return r;
}

/// Exact squared horizontal offset |z_p - z_q|^2 and doubled vertical offset
/// 2 Delta = m_p - m_q - Im<z_p, z_q>.
struct ExactOffset {
  i128 dz2 = 0;
  i128 two_delta = 0;
};

inline ExactOffset exact_offset(const LatticePoint& p, const LatticePoint& q) {
  require_same_dim(p.dim(), q.dim());
  ExactOffset o;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    const i128 da = static_cast<i128>(p.a[j]) - q.a[j];
    const i128 db = static_cast<i128>(p.b[j]) - q.b[j];
    o.dz2 = checked_add(o.dz2, checked_add(checked_mul(da, da), checked_mul(db, db)));
  }
  i128 im = 0;
  for (std::size_t j = 0; j < p.dim(); ++j)
    im += static_cast<i128>(p.a[j]) * q.b[j] - static_cast<i128>(p.b[j]) * q.a[j];
  o.two_delta = static_cast<i128>(p.m) - q.m - im;
  return o;
}

/// Sign of 4 N D |dz|^2 + D^2 (2 Delta)^2 - 4 N^2, which equals the sign of
/// d(p,q) - r for the squared radius r^2 = N / D.
inline int compare_radius_sq(const ExactOffset& o, i128 num, i128 den) {
  const i128 lhs = checked_add(checked_mul(checked_mul(4 * num, den), o.dz2),
                               checked_mul(checked_mul(den, den), checked_mul(o.two_delta, o.two_delta)));
  const i128 rhs = checked_mul(4 * num, num);
  return (lhs > rhs) - (lhs < rhs);
}

}  // namespace detail

/// Exact sign of d(p,q) - r where r^2 = num/den (num, den > 0).
inline int compare_distance_sq(const LatticePoint& p, const LatticePoint& q, std::int64_t num, std::int64_t den = 1) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("squared radius must be positive");
  return detail::compare_radius_sq(detail::exact_offset(p, q), num, den);
}

/// d(p,q) <= r for an integer radius, decided in exact integer arithmetic.
inline bool dist_le_exact(const LatticePoint& p, const LatticePoint& q, std::int64_t r) {
  if (r <= 0) throw std::invalid_argument("dist_le_exact: radius must be positive");
  return compare_distance_sq(p, q, r * r) <= 0;
}

/// d(p,q) == r for an integer radius, exact.
inline bool dist_eq_exact(const LatticePoint& p, const LatticePoint& q, std::int64_t r) {
  if (r <= 0) throw std::invalid_argument("dist_eq_exact: radius must be positive");
  return compare_distance_sq(p, q, r * r) == 0;
}

/// d(p,q) <= u/v, exact (denominators cleared).
inline bool dist_le_exact_rational(const LatticePoint& p, const LatticePoint& q, std::int64_t u, std::int64_t v) {
  if (u <= 0 || v <= 0) throw std::invalid_argument("dist_le_exact_rational: radius must be positive");
  return compare_distance_sq(p, q, u * u, v * v) <= 0;
}

/// Polar data of p != 0: lambda = d(p,0) and the dilate of p onto the unit
/// sphere (which is the Euclidean unit sphere). rho_j, phi_j are the modulus
/// and argument of the j-th coordinate of z_hat; rho is not renormalised.
struct SphereCoords {
  double lambda = 0.0;
  std::vector<Complex> z_hat;
  double tau_hat = 0.0;
  std::vector<double> rho;
  std::vector<double> phi;

  ContinuousPoint point() const { return {z_hat, tau_hat}; }
};

inline SphereCoords project_unit_sphere(const ContinuousPoint& p) {
  if (p.is_identity()) throw std::invalid_argument("project_unit_sphere: identity has no projection");
  SphereCoords s;
  s.lambda = norm(p);
  const ContinuousPoint hat = dilate(1.0 / s.lambda, p);
  s.z_hat = hat.z;
  s.tau_hat = hat.tau;
  s.rho.resize(p.dim());
  s.phi.resize(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) {
    s.rho[j] = std::abs(hat.z[j]);
    // std::arg returns values in [-pi, pi]; map -pi to pi.
    double ph = std::arg(hat.z[j]);
    if (ph <= -std::numbers::pi) ph = std::numbers::pi;
    s.phi[j] = ph;
  }
  return s;
}

/// Magnitude of the angle between the phases of the j-th coordinates of p
/// and q, in [0, pi] (pi only for exactly opposite phases). Zero when either
/// coordinate vanishes.
inline double angular_gap(const ContinuousPoint& p, const ContinuousPoint& q, std::size_t j) {
  detail::require_same_dim(p.dim(), q.dim());
  if (j >= p.dim()) throw std::out_of_range("angular_gap: coordinate index");
  if (p.is_identity() || q.is_identity()) throw std::invalid_argument("angular_gap: points must be non-identity");
  if (p.z[j] == Complex{} || q.z[j] == Complex{}) return 0.0;
  // Dilation does not change phases, so the raw coordinates suffice.
  return std::abs(std::arg(p.z[j] * std::conj(q.z[j])));
}

}  // namespace heis

#endif  // HEIS_METRIC_HPP
