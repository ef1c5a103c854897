#ifndef HEIS_GROUP_HPP
#define HEIS_GROUP_HPP

// Points of the continuous Heisenberg group C^n x R and of its integer
// lattice, with the group law, dilations and the two isometry families.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis {

using Complex = std::complex<double>;

/// Element (z, tau) of C^n x R.
struct ContinuousPoint {
  std::vector<Complex> z;
  double tau = 0.0;

  ContinuousPoint() = default;
  ContinuousPoint(std::vector<Complex> z_, double tau_) : z(std::move(z_)), tau(tau_) {}

  static ContinuousPoint identity(std::size_t n) { return {std::vector<Complex>(n), 0.0}; }

  std::size_t dim() const noexcept { return z.size(); }
  bool is_identity() const noexcept {
    for (const auto& c : z)
      if (c != Complex{}) return false;
    return tau == 0.0;
  }
  friend bool operator==(const ContinuousPoint&, const ContinuousPoint&) = default;
};

/// Element of the discrete group: z = a + i b with integer a, b, and the
/// doubled central coordinate m = 2 tau. Valid iff m = <a,b> (mod 2).
struct LatticePoint {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::int64_t m = 0;

  LatticePoint() = default;
  LatticePoint(std::vector<std::int64_t> a_, std::vector<std::int64_t> b_, std::int64_t m_)
      : a(std::move(a_)), b(std::move(b_)), m(m_) {
    if (a.size() != b.size()) throw std::invalid_argument("LatticePoint: a and b differ in length");
  }

  static LatticePoint identity(std::size_t n) { return {std::vector<std::int64_t>(n), std::vector<std::int64_t>(n), 0}; }

  /// (e_j, 0) for re = true, (i e_j, 0) otherwise; j is zero-based.
  static LatticePoint generator(std::size_t n, std::size_t j, bool re = true) {
    LatticePoint g = identity(n);
    (re ? g.a : g.b).at(j) = 1;
    return g;
  }

  std::size_t dim() const noexcept { return a.size(); }

  std::int64_t ab_dot() const noexcept {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
  }
  bool valid() const noexcept { return ((m - ab_dot()) % 2) == 0; }
  bool is_identity() const noexcept {
    if (m != 0) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] != 0 || b[j] != 0) return false;
    return true;
  }

  ContinuousPoint to_continuous() const {
    std::vector<Complex> z(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) z[j] = Complex(static_cast<double>(a[j]), static_cast<double>(b[j]));
    return {std::move(z), 0.5 * static_cast<double>(m)};
  }

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator<(const LatticePoint& p, const LatticePoint& q) {
    if (p.a != q.a) return p.a < q.a;
    if (p.b != q.b) return p.b < q.b;
    return p.m < q.m;
  }
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(p.m);
    auto mix = [&h](std::int64_t v) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (auto v : p.a) mix(v);
    for (auto v : p.b) mix(v);
    return static_cast<std::size_t>(h);
  }
};

namespace detail {
inline void require_same_dim(std::size_t n1, std::size_t n2) {
  if (n1 != n2) throw std::invalid_argument("dimension mismatch: " + std::to_string(n1) + " vs " + std::to_string(n2));
}
}  // namespace detail

/// <z, w> = sum conj(z_j) w_j.
inline Complex hermitian(const std::vector<Complex>& z, const std::vector<Complex>& w) {
  detail::require_same_dim(z.size(), w.size());
  Complex s{};
  for (std::size_t j = 0; j < z.size(); ++j) s += std::conj(z[j]) * w[j];
  return s;
}

/// Im<z_p, z_q> for lattice points, an exact integer.
inline std::int64_t symplectic(const LatticePoint& p, const LatticePoint& q) {
  detail::require_same_dim(p.dim(), q.dim());
  std::int64_t s = 0;
  for (std::size_t j = 0; j < p.a.size(); ++j) s += p.a[j] * q.b[j] - p.b[j] * q.a[j];
  return s;
}

inline ContinuousPoint multiply(const ContinuousPoint& p, const ContinuousPoint& q) {
  detail::require_same_dim(p.dim(), q.dim());
  ContinuousPoint r;
  r.z.resize(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) r.z[j] = p.z[j] + q.z[j];
  r.tau = p.tau + q.tau + 0.5 * hermitian(p.z, q.z).imag();
  return r;
}

inline LatticePoint multiply(const LatticePoint& p, const LatticePoint& q) {
  detail::require_same_dim(p.dim(), q.dim());
  LatticePoint r = p;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    r.a[j] += q.a[j];
    r.b[j] += q.b[j];
  }
  r.m = p.m + q.m + symplectic(p, q);
  return r;
}

inline ContinuousPoint inverse(const ContinuousPoint& p) {
  ContinuousPoint r = p;
  for (auto& c : r.z) c = -c;
  r.tau = -p.tau;
  return r;
}

inline LatticePoint inverse(const LatticePoint& p) {
  LatticePoint r = p;
  for (auto& v : r.a) v = -v;
  for (auto& v : r.b) v = -v;
  r.m = -p.m;
  return r;
}

/// (z, tau) -> (lambda z, lambda^2 tau); an automorphism for every lambda > 0.
inline ContinuousPoint dilate(double lambda, const ContinuousPoint& p) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  ContinuousPoint r = p;
  for (auto& c : r.z) c *= lambda;
  r.tau = lambda * lambda * p.tau;
  return r;
}

/// (z, tau) -> (conj z, -tau).
inline ContinuousPoint isometry_flip(const ContinuousPoint& p) {
  ContinuousPoint r = p;
  for (auto& c : r.z) c = std::conj(c);
  r.tau = -p.tau;
  return r;
}

inline LatticePoint isometry_flip(const LatticePoint& p) {
  LatticePoint r = p;
  for (auto& v : r.b) v = -v;
  r.m = -p.m;
  return r;
}

/// (z, tau) -> (R_theta z, tau) with R_theta = diag(exp(i theta_j)).
inline ContinuousPoint isometry_rotate(const std::vector<double>& theta, const ContinuousPoint& p) {
  detail::require_same_dim(theta.size(), p.dim());
  ContinuousPoint r = p;
  for (std::size_t j = 0; j < p.dim(); ++j) r.z[j] *= std::polar(1.0, theta[j]);
  return r;
}

/// Lattice rotation by quarter turns: coordinate j is multiplied by i^{turns[j]}.
inline LatticePoint isometry_rotate(const std::vector<int>& turns, const LatticePoint& p) {
  detail::require_same_dim(turns.size(), p.dim());
  LatticePoint r = p;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    int k = ((turns[j] % 4) + 4) % 4;
    for (int s = 0; s < k; ++s) {
      std::int64_t a = r.a[j];
      r.a[j] = -r.b[j];
      r.b[j] = a;
    }
  }
  return r;
}

}  // namespace heis

template <>
struct std::hash<heis::LatticePoint> : heis::LatticePointHash {};

#endif  // HEIS_GROUP_HPP
