#ifndef HEIS_FIBERS_HPP
#define HEIS_FIBERS_HPP

// Finite subsets of the lattice stored fibrewise: for each horizontal
// coordinate z = a + ib the admissible central values m all share the
// parity of <a,b>, so a fibre is a list of step-2 runs lo, lo+2, ..., hi.
// Lattice balls, their translates and products have one run per fibre,
// which keeps all counting exact and independent of the number of points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "heis/errors.hpp"
#include "heis/group.hpp"

namespace heis {

/// Run of central values lo, lo+2, ..., hi (lo <= hi, same parity).
struct Run {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::uint64_t count() const noexcept { return static_cast<std::uint64_t>((hi - lo) / 2 + 1); }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Horizontal key: a_1..a_n followed by b_1..b_n.
using HKey = std::vector<std::int64_t>;

inline HKey hkey(const LatticePoint& p) {
  HKey k(p.a);
  k.insert(k.end(), p.b.begin(), p.b.end());
  return k;
}

struct HKeyHash {
  std::size_t operator()(const HKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

inline std::int64_t key_ab(const HKey& k) {
  const std::size_t n = k.size() / 2;
  std::int64_t s = 0;
  for (std::size_t j = 0; j < n; ++j) s += k[j] * k[n + j];
  return s;
}

/// Im<z_g, z_k>.
inline std::int64_t key_symplectic(const HKey& g, const HKey& k) {
  const std::size_t n = g.size() / 2;
  std::int64_t s = 0;
  for (std::size_t j = 0; j < n; ++j) s += g[j] * k[n + j] - g[n + j] * k[j];
  return s;
}

/// Sorts runs and merges overlapping or adjacent ones (all runs share parity).
inline void normalize_runs(std::vector<Run>& runs) {
  if (runs.empty()) return;
  std::sort(runs.begin(), runs.end(), [](const Run& x, const Run& y) { return x.lo < y.lo; });
  std::size_t w = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].lo <= runs[w].hi + 2) {
      runs[w].hi = std::max(runs[w].hi, runs[i].hi);
    } else {
      runs[++w] = runs[i];
    }
  }
  runs.resize(w + 1);
}

enum class SetOp { Union, Intersection, Difference, SymmetricDifference };

/// Boolean combination of two normalised run lists of equal parity, using
/// half-open ends hi + 2.
inline std::vector<Run> combine_runs(const std::vector<Run>& x, const std::vector<Run>& y, SetOp op) {
  std::vector<std::int64_t> cuts;
  cuts.reserve(2 * (x.size() + y.size()));
  for (const auto& r : x) { cuts.push_back(r.lo); cuts.push_back(r.hi + 2); }
  for (const auto& r : y) { cuts.push_back(r.lo); cuts.push_back(r.hi + 2); }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto member = [](const std::vector<Run>& rs, std::int64_t v) {
    auto it = std::upper_bound(rs.begin(), rs.end(), v, [](std::int64_t val, const Run& r) { return val < r.lo; });
    if (it == rs.begin()) return false;
    --it;
    return v <= it->hi;
  };

  std::vector<Run> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const std::int64_t v = cuts[i];
    const bool in_x = member(x, v), in_y = member(y, v);
    bool keep = false;
    switch (op) {
      case SetOp::Union: keep = in_x || in_y; break;
      case SetOp::Intersection: keep = in_x && in_y; break;
      case SetOp::Difference: keep = in_x && !in_y; break;
      case SetOp::SymmetricDifference: keep = in_x != in_y; break;
    }
    if (keep) out.push_back({v, cuts[i + 1] - 2});
  }
  normalize_runs(out);
  return out;
}

/// floor(sqrt(v)) for v >= 0.
inline std::int64_t isqrt(__int128 v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<__int128>(r) * r > v) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace detail

class FiberSet {
 public:
  using Map = std::map<HKey, std::vector<Run>>;

  explicit FiberSet(std::size_t n = 1) : n_(n) {}

  static FiberSet from_points(std::size_t n, const std::vector<LatticePoint>& pts) {
    FiberSet s(n);
    for (const auto& p : pts) s.insert(p);
    s.normalize();
    return s;
  }

  std::size_t dim() const noexcept { return n_; }
  const Map& fibers() const noexcept { return fibers_; }
  bool empty() const noexcept { return fibers_.empty(); }

  /// Adds a point; call normalize() after a batch of inserts.
  void insert(const LatticePoint& p) {
    if (p.dim() != n_) throw std::invalid_argument("FiberSet: dimension mismatch");
    if (!p.valid()) throw std::invalid_argument("FiberSet: point violates parity invariant");
    fibers_[hkey(p)].push_back({p.m, p.m});
  }

  /// Adds a run of central values at horizontal key k.
  void add_run(const HKey& k, Run r) {
    if (r.lo > r.hi) return;
    fibers_[k].push_back(r);
  }

  void normalize() {
    for (auto it = fibers_.begin(); it != fibers_.end();) {
      detail::normalize_runs(it->second);
      it = it->second.empty() ? fibers_.erase(it) : std::next(it);
    }
  }

  std::uint64_t count() const noexcept {
    std::uint64_t c = 0;
    for (const auto& [k, runs] : fibers_)
      for (const auto& r : runs) c += r.count();
    return c;
  }

  bool contains(const LatticePoint& p) const {
    auto it = fibers_.find(hkey(p));
    if (it == fibers_.end()) return false;
    for (const auto& r : it->second)
      if (p.m >= r.lo && p.m <= r.hi && ((p.m - r.lo) % 2) == 0) return true;
    return false;
  }

  static LatticePoint point_at(const HKey& k, std::int64_t m) {
    const std::size_t n = k.size() / 2;
    return {std::vector<std::int64_t>(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n)),
            std::vector<std::int64_t>(k.begin() + static_cast<std::ptrdiff_t>(n), k.end()), m};
  }

  template <class F>
  void for_each_point(F&& f) const {
    for (const auto& [k, runs] : fibers_)
      for (const auto& r : runs)
        for (std::int64_t m = r.lo; m <= r.hi; m += 2) f(point_at(k, m));
  }

  /// All points in (a, b, m) lexicographic order.
  std::vector<LatticePoint> points(std::uint64_t cap = kDefaultCap) const {
    const auto c = count();
    if (c > cap) throw ResourceCapError(c, cap);
    std::vector<LatticePoint> out;
    out.reserve(c);
    for_each_point([&out](LatticePoint p) { out.push_back(std::move(p)); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// { g * p : p in this }.
  FiberSet left_multiply(const LatticePoint& g) const {
    const HKey gk = hkey(g);
    FiberSet out(n_);
    for (const auto& [k, runs] : fibers_) {
      HKey nk(k);
      for (std::size_t i = 0; i < nk.size(); ++i) nk[i] += gk[i];
      const std::int64_t shift = g.m + detail::key_symplectic(gk, k);
      auto& dst = out.fibers_[nk];
      for (const auto& r : runs) dst.push_back({r.lo + shift, r.hi + shift});
    }
    return out;
  }

  /// { p * g : p in this }.
  FiberSet right_multiply(const LatticePoint& g) const {
    const HKey gk = hkey(g);
    FiberSet out(n_);
    for (const auto& [k, runs] : fibers_) {
      HKey nk(k);
      for (std::size_t i = 0; i < nk.size(); ++i) nk[i] += gk[i];
      const std::int64_t shift = g.m + detail::key_symplectic(k, gk);
      auto& dst = out.fibers_[nk];
      for (const auto& r : runs) dst.push_back({r.lo + shift, r.hi + shift});
    }
    return out;
  }

  friend FiberSet combine(const FiberSet& x, const FiberSet& y, detail::SetOp op) {
    if (x.n_ != y.n_) throw std::invalid_argument("FiberSet: dimension mismatch");
    static const std::vector<Run> kEmpty;
    FiberSet out(x.n_);
    auto ix = x.fibers_.begin();
    auto iy = y.fibers_.begin();
    while (ix != x.fibers_.end() || iy != y.fibers_.end()) {
      const HKey* key;
      const std::vector<Run>* rx = &kEmpty;
      const std::vector<Run>* ry = &kEmpty;
      if (iy == y.fibers_.end() || (ix != x.fibers_.end() && ix->first < iy->first)) {
        key = &ix->first; rx = &ix->second; ++ix;
      } else if (ix == x.fibers_.end() || iy->first < ix->first) {
        key = &iy->first; ry = &iy->second; ++iy;
      } else {
        key = &ix->first; rx = &ix->second; ry = &iy->second; ++ix; ++iy;
      }
      auto runs = detail::combine_runs(*rx, *ry, op);
      if (!runs.empty()) out.fibers_.emplace(*key, std::move(runs));
    }
    return out;
  }

  friend bool operator==(const FiberSet& x, const FiberSet& y) { return x.n_ == y.n_ && x.fibers_ == y.fibers_; }

 private:
  std::size_t n_;
  Map fibers_;
};

inline FiberSet set_union(const FiberSet& x, const FiberSet& y) { return combine(x, y, detail::SetOp::Union); }
inline FiberSet set_intersection(const FiberSet& x, const FiberSet& y) { return combine(x, y, detail::SetOp::Intersection); }
inline FiberSet set_difference(const FiberSet& x, const FiberSet& y) { return combine(x, y, detail::SetOp::Difference); }
inline FiberSet symmetric_difference(const FiberSet& x, const FiberSet& y) {
  return combine(x, y, detail::SetOp::SymmetricDifference);
}

/// { a * b : a in A, b in B }. Each pair of fibres contributes one run
/// (sums of two step-2 runs form a step-2 run), so the cost is
/// |runs(A)| * |runs(B)| rather than |A| * |B|.
inline FiberSet product_fibers(const FiberSet& A, const FiberSet& B, std::uint64_t cap = kDefaultCap) {
  if (A.dim() != B.dim()) throw std::invalid_argument("product: dimension mismatch");
  std::uint64_t ra = 0, rb = 0;
  for (const auto& [k, r] : A.fibers()) ra += r.size();
  for (const auto& [k, r] : B.fibers()) rb += r.size();
  if (ra != 0 && rb > cap / ra) throw ResourceCapError(ra * rb, cap);

  std::unordered_map<HKey, std::vector<Run>, HKeyHash> acc;
  for (const auto& [ka, runs_a] : A.fibers()) {
    for (const auto& [kb, runs_b] : B.fibers()) {
      HKey s(ka);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += kb[i];
      const std::int64_t shift = detail::key_symplectic(ka, kb);
      auto& dst = acc[s];
      for (const auto& x : runs_a)
        for (const auto& y : runs_b) dst.push_back({x.lo + y.lo + shift, x.hi + y.hi + shift});
      if (dst.size() > 64) detail::normalize_runs(dst);
    }
  }
  FiberSet out(A.dim());
  for (auto& [k, runs] : acc)
    for (const auto& r : runs) out.add_run(k, r);
  out.normalize();
  return out;
}

}  // namespace heis

#endif  // HEIS_FIBERS_HPP
