#ifndef HEIS_BALLS_HPP
#define HEIS_BALLS_HPP

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "heis/errors.hpp"
#include "heis/fibers.hpp"
#include "heis/metric.hpp"
#include "heis/rational.hpp"

namespace heis {

namespace detail {

// Visits every integer vector v of length dims with |v|^2 <= bound.
template <class F>
void for_each_in_disk(std::size_t dims, std::int64_t bound, std::vector<std::int64_t>& v, std::size_t pos,
                      std::int64_t used, F& f) {
  if (pos == dims) {
    f(v, used);
    return;
  }
  const std::int64_t rem = bound - used;
  const std::int64_t lim = isqrt(rem);
  for (std::int64_t x = -lim; x <= lim; ++x) {
    v[pos] = x;
    for_each_in_disk(dims, bound, v, pos + 1, used + x * x, f);
  }
  v[pos] = 0;
}

}  // namespace detail

/// Fibres of the closed integer ball { p : d(p,0) <= r } with r^2 = radius_sq.
/// Fibre at z: |m| <= sqrt(4 r^2 (r^2 - |z|^2)), restricted to the parity of <a,b>.
inline FiberSet ball_fibers_sq(std::size_t n, std::int64_t radius_sq, std::uint64_t cap = kDefaultCap) {
  if (n == 0) throw std::invalid_argument("ball: dimension must be positive");
  if (radius_sq <= 0) throw std::invalid_argument("ball: radius must be positive");
  const auto side = static_cast<std::uint64_t>(2 * detail::isqrt(radius_sq) + 1);
  const auto horizontal = detail::saturating_pow(side, 2 * n);
  if (horizontal > cap) throw ResourceCapError(horizontal, cap);

  FiberSet out(n);
  std::vector<std::int64_t> v(2 * n, 0);
  auto visit = [&](const std::vector<std::int64_t>& key, std::int64_t z2) {
    const __int128 r2 = radius_sq;
    std::int64_t mmax = detail::isqrt(4 * r2 * (r2 - z2));
    const std::int64_t parity = detail::key_ab(key) & 1;
    if (((mmax - parity) & 1) != 0) --mmax;
    if (mmax >= 0) out.add_run(key, {-mmax, mmax});
  };
  detail::for_each_in_disk(2 * n, radius_sq, v, 0, 0, visit);
  out.normalize();
  return out;
}

/// Fibres of B_k(center) = B_k(0) * center.
inline FiberSet ball_fibers(std::size_t n, std::int64_t k, const LatticePoint* center = nullptr,
                            std::uint64_t cap = kDefaultCap) {
  if (k < 1) throw std::invalid_argument("ball: k must be >= 1");
  FiberSet b = ball_fibers_sq(n, k * k, cap);
  if (center == nullptr || center->is_identity()) return b;
  if (center->dim() != n) throw std::invalid_argument("ball: center dimension mismatch");
  return b.right_multiply(*center);
}

/// Materialised integer ball.
struct BallTable {
  std::int64_t k = 0;
  std::vector<LatticePoint> points;  // sorted
  std::uint64_t cardinality = 0;
};

inline BallTable enumerate_ball(std::size_t n, std::int64_t k, const LatticePoint* center = nullptr,
                                std::uint64_t cap = kDefaultCap) {
  const FiberSet f = ball_fibers(n, k, center, cap);
  BallTable t;
  t.k = k;
  t.points = f.points(cap);
  t.cardinality = t.points.size();
  return t;
}

inline std::uint64_t ball_cardinality(std::size_t n, std::int64_t k, std::uint64_t cap = kDefaultCap) {
  return ball_fibers(n, k, nullptr, cap).count();
}

/// { a * b } for explicit point sets, deduplicated and sorted.
inline std::vector<LatticePoint> product_set(const std::vector<LatticePoint>& A, const std::vector<LatticePoint>& B,
                                             std::uint64_t cap = kDefaultCap) {
  if (A.empty() || B.empty()) return {};
  const std::size_t n = A.front().dim();
  return product_fibers(FiberSet::from_points(n, A), FiberSet::from_points(n, B), cap).points(cap);
}

struct DoublingRow {
  std::int64_t k = 0;
  std::uint64_t card = 0;
  std::uint64_t card_sq = 0;
  double ratio = 0.0;
};

/// |B_k|, |B_k B_k| and their ratio for k = 1..k_max.
inline std::vector<DoublingRow> doubling_table(std::size_t n, std::int64_t k_max, std::uint64_t cap = kDefaultCap) {
  if (k_max < 1) throw std::invalid_argument("doubling_table: k_max must be >= 1");
  std::vector<DoublingRow> rows;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const FiberSet b = ball_fibers(n, k, nullptr, cap);
    const FiberSet sq = product_fibers(b, b, cap);
    DoublingRow r{k, b.count(), sq.count(), 0.0};
    r.ratio = static_cast<double>(r.card_sq) / static_cast<double>(r.card);
    rows.push_back(r);
  }
  return rows;
}

struct FolnerRow {
  std::int64_t k = 0;
  std::uint64_t sym_diff = 0;
  std::uint64_t card = 0;
  Rational ratio;
};

/// |B_k symdiff sigma B_k| / |B_k|, exact.
inline FolnerRow folner_ratio(std::size_t n, std::int64_t k, const LatticePoint& sigma,
                              std::uint64_t cap = kDefaultCap) {
  if (sigma.dim() != n) throw std::invalid_argument("folner_ratio: sigma dimension mismatch");
  const FiberSet b = ball_fibers(n, k, nullptr, cap);
  const FiberSet sb = b.left_multiply(sigma);
  FolnerRow r;
  r.k = k;
  r.card = b.count();
  r.sym_diff = symmetric_difference(b, sb).count();
  r.ratio = Rational(r.sym_diff, r.card);
  return r;
}

}  // namespace heis

#endif  // HEIS_BALLS_HPP
