#ifndef HEIS_ERGODIC_HPP
#define HEIS_ERGODIC_HPP

// Finite non-singular actions of the lattice with exact rational masses,
// cocycle-weighted averages over the integer balls, and the discrete maximal
// lemma and inequality with measured constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "heis/balls.hpp"
#include "heis/boundary.hpp"
#include "heis/covering.hpp"
#include "heis/errors.hpp"
#include "heis/rational.hpp"
#include "heis/rng.hpp"

namespace heis {

namespace detail {

inline std::int64_t mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/// Left action of the lattice on a finite set X = {0, .., |X|-1} through a
/// finite image. Group elements are reduced to a key in the image; the key
/// acts on X. Quotient: X = image = H_n(Z/M), central coordinate
/// c = (m - <a,b>)/2 mod M. Torus: X = (Z/N)^{2n}, image = (Z/N)^{2n} acting by
/// x_j += shift_j * key_j.
struct WeightedAction {
  enum class Kind { Quotient, Torus };
  Kind kind = Kind::Quotient;
  std::size_t n = 1;
  std::int64_t modulus = 2;
  std::vector<Rational> mu;
  std::vector<std::int64_t> shifts;  // torus only, length 2n

  std::size_t size() const noexcept { return mu.size(); }

  std::size_t image_size() const {
    const std::size_t digits = kind == Kind::Quotient ? 2 * n + 1 : 2 * n;
    std::size_t s = 1;
    for (std::size_t i = 0; i < digits; ++i) s *= static_cast<std::size_t>(modulus);
    return s;
  }

  std::vector<std::int64_t> digits(std::size_t idx, std::size_t count) const {
    std::vector<std::int64_t> d(count);
    for (std::size_t i = 0; i < count; ++i) {
      d[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(modulus));
      idx /= static_cast<std::size_t>(modulus);
    }
    return d;
  }
  std::size_t encode(const std::vector<std::int64_t>& d) const {
    std::size_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * static_cast<std::size_t>(modulus) + static_cast<std::size_t>(d[i]);
    return idx;
  }

  /// Image key of (a, b) with central coordinate c (quotient) or of (a, b) (torus).
  std::size_t key_of(const HKey& ab, std::int64_t c) const {
    std::vector<std::int64_t> d(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) d[i] = detail::mod(ab[i], modulus);
    if (kind == Kind::Quotient) d.push_back(detail::mod(c, modulus));
    return encode(d);
  }

  std::size_t key(const LatticePoint& g) const {
    if (g.dim() != n) throw std::invalid_argument("WeightedAction: dimension mismatch");
    const HKey k = hkey(g);
    return key_of(k, (g.m - detail::key_ab(k)) / 2);
  }

  std::size_t act_key(std::size_t key, std::size_t x) const {
    if (kind == Kind::Quotient) {
      const auto g = digits(key, 2 * n + 1), h = digits(x, 2 * n + 1);
      std::vector<std::int64_t> o(2 * n + 1);
      std::int64_t cross = 0;
      for (std::size_t j = 0; j < n; ++j) cross += g[n + j] * h[j];
      for (std::size_t i = 0; i < 2 * n; ++i) o[i] = (g[i] + h[i]) % modulus;
      o[2 * n] = detail::mod(g[2 * n] + h[2 * n] - cross, modulus);
      return encode(o);
    }
    const auto g = digits(key, 2 * n), h = digits(x, 2 * n);
    std::vector<std::int64_t> o(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) o[i] = detail::mod(h[i] + shifts[i] * g[i], modulus);
    return encode(o);
  }

  std::size_t act(const LatticePoint& g, std::size_t x) const { return act_key(key(g), x); }

  void validate() const {
    if (modulus < 2) throw std::invalid_argument("WeightedAction: modulus must be >= 2");
    if (mu.size() != image_size())
      throw std::invalid_argument("WeightedAction: wrong number of masses");
    Rational s = 0;
    for (const auto& m : mu) {
      if (m <= 0) throw std::invalid_argument("WeightedAction: masses must be positive");
      s += m;
    }
    if (s != 1) throw std::invalid_argument("WeightedAction: masses must sum to 1");
    if (kind == Kind::Torus && shifts.size() != 2 * n) throw std::invalid_argument("WeightedAction: need 2n shifts");
  }
};

/// H_n(Z/M) acted on by left translation. Empty masses mean uniform.
inline WeightedAction make_quotient_action(std::size_t n, std::int64_t M, std::vector<Rational> masses = {}) {
  if (n == 0) throw std::invalid_argument("make_quotient_action: n must be positive");
  if (M < 2) throw std::invalid_argument("make_quotient_action: modulus must be >= 2");
  WeightedAction w;
  w.kind = WeightedAction::Kind::Quotient;
  w.n = n;
  w.modulus = M;
  const std::size_t X = w.image_size();
  if (masses.empty()) masses.assign(X, Rational(1, static_cast<long long>(X)));
  w.mu = std::move(masses);
  w.validate();
  return w;
}

/// Masses proportional to 1, 2, .., |X|.
inline std::vector<Rational> linear_masses(std::size_t X) {
  const long long total = static_cast<long long>(X * (X + 1) / 2);
  std::vector<Rational> m(X);
  for (std::size_t i = 0; i < X; ++i) m[i] = Rational(static_cast<long long>(i + 1), total);
  return m;
}

/// Rotation of the grid torus (Z/N)^{2n} by round(alpha_j N) per unit of the
/// j-th horizontal coordinate. The centre acts trivially.
inline WeightedAction make_torus_action(std::size_t n, const std::vector<double>& alpha, std::int64_t N) {
  if (n == 0) throw std::invalid_argument("make_torus_action: n must be positive");
  if (N < 2) throw std::invalid_argument("make_torus_action: grid resolution must be >= 2");
  if (alpha.size() != 2 * n) throw std::invalid_argument("make_torus_action: alpha must have 2n entries");
  WeightedAction w;
  w.kind = WeightedAction::Kind::Torus;
  w.n = n;
  w.modulus = N;
  for (double a : alpha) w.shifts.push_back(detail::mod(static_cast<std::int64_t>(std::llround(a * static_cast<double>(N))), N));
  const std::size_t X = w.image_size();
  w.mu.assign(X, Rational(1, static_cast<long long>(X)));
  w.validate();
  return w;
}

inline Rational rn_derivative(const WeightedAction& w, const LatticePoint& g, std::size_t x) {
  if (x >= w.size()) throw std::out_of_range("rn_derivative: x outside X");
  return w.mu[w.act(g, x)] / w.mu[x];
}

/// X is a single orbit of the generators.
inline bool is_transitive(const WeightedAction& w) {
  std::vector<bool> seen(w.size(), false);
  std::queue<std::size_t> q;
  seen[0] = true;
  q.push(0);
  std::size_t count = 1;
  std::vector<LatticePoint> gens;
  for (std::size_t j = 0; j < w.n; ++j)
    for (bool re : {true, false}) gens.push_back(LatticePoint::generator(w.n, j, re));
  LatticePoint zc = LatticePoint::identity(w.n);
  zc.m = 2;
  gens.push_back(zc);
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop();
    for (const auto& g : gens) {
      const std::size_t y = w.act(g, x);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        q.push(y);
      }
    }
  }
  return count == w.size();
}

/// Multiplicity of each image key over a set of group elements.
using KeyHistogram = std::vector<std::uint64_t>;

inline KeyHistogram key_histogram(const WeightedAction& w, const FiberSet& s) {
  KeyHistogram h(w.image_size(), 0);
  const std::uint64_t M = static_cast<std::uint64_t>(w.modulus);
  for (const auto& [k, runs] : s.fibers()) {
    const std::int64_t ab = detail::key_ab(k);
    for (const auto& r : runs) {
      if (w.kind == WeightedAction::Kind::Torus) {
        h[w.key_of(k, 0)] += r.count();
        continue;
      }
      // c runs over consecutive integers; spread the run over residues.
      const std::int64_t c0 = (r.lo - ab) / 2;
      const std::uint64_t len = r.count();
      const std::uint64_t full = len / M, rest = len % M;
      for (std::uint64_t i = 0; i < std::min<std::uint64_t>(M, len); ++i)
        h[w.key_of(k, c0 + static_cast<std::int64_t>(i))] += full + (i < rest ? 1 : 0);
    }
  }
  return h;
}

inline KeyHistogram ball_histogram(const WeightedAction& w, std::int64_t k, std::uint64_t cap = kDefaultCap) {
  return key_histogram(w, ball_fibers(w.n, k, nullptr, cap));
}

struct AverageResult {
  std::int64_t k = 0;
  Rational value;
  Rational numerator;    // sum over B_k of f(gx) w_g(x)
  Rational denominator;  // sum over B_k of w_g(x)
};

/// sum_g hist(g) f(gx) w_g(x) and sum_g hist(g) w_g(x).
inline std::pair<Rational, Rational> weighted_sums(const WeightedAction& w, const KeyHistogram& h,
                                                   const std::vector<Rational>& f, std::size_t x) {
  Rational num = 0, den = 0;
  for (std::size_t key = 0; key < h.size(); ++key) {
    if (h[key] == 0) continue;
    const std::size_t y = w.act_key(key, x);
    const Rational m = w.mu[y] * static_cast<unsigned long long>(h[key]);
    num += f[y] * m;
    den += m;
  }
  return {num / w.mu[x], den / w.mu[x]};
}

inline AverageResult average_from_histogram(const WeightedAction& w, const KeyHistogram& h,
                                            const std::vector<Rational>& f, std::int64_t k, std::size_t x) {
  if (f.size() != w.size()) throw std::invalid_argument("weighted_average: f must be defined on X");
  if (x >= w.size()) throw std::out_of_range("weighted_average: x outside X");
  AverageResult r;
  r.k = k;
  std::tie(r.numerator, r.denominator) = weighted_sums(w, h, f, x);
  if (r.denominator <= 0) throw std::logic_error("weighted_average: empty ball");
  r.value = r.numerator / r.denominator;
  return r;
}

inline AverageResult weighted_average(const WeightedAction& w, const std::vector<Rational>& f, std::int64_t k,
                                      std::size_t x, std::uint64_t cap = kDefaultCap) {
  if (k < 1) throw std::invalid_argument("weighted_average: k must be >= 1");
  return average_from_histogram(w, ball_histogram(w, k, cap), f, k, x);
}

/// Averages at every base point, sharing one enumeration of B_k.
inline std::vector<AverageResult> weighted_averages(const WeightedAction& w, const std::vector<Rational>& f,
                                                    std::int64_t k, std::uint64_t cap = kDefaultCap) {
  if (k < 1) throw std::invalid_argument("weighted_average: k must be >= 1");
  const KeyHistogram h = ball_histogram(w, k, cap);
  std::vector<AverageResult> out;
  for (std::size_t x = 0; x < w.size(); ++x) out.push_back(average_from_histogram(w, h, f, k, x));
  return out;
}

inline Rational integral(const WeightedAction& w, const std::vector<Rational>& f) {
  Rational s = 0;
  for (std::size_t x = 0; x < w.size(); ++x) s += f[x] * w.mu[x];
  return s;
}

/// sigma-hat h (x) = h(sigma x) w_sigma(x).
inline std::vector<Rational> transfer(const WeightedAction& w, const LatticePoint& sigma, const std::vector<Rational>& h) {
  std::vector<Rational> out(w.size());
  for (std::size_t x = 0; x < w.size(); ++x) out[x] = h[w.act(sigma, x)] * rn_derivative(w, sigma, x);
  return out;
}

/// Weighted mass of B_k symdiff sigma B_k over the mass of B_k.
inline Rational nsfc_ratio(const WeightedAction& w, std::int64_t k, const LatticePoint& sigma, std::size_t x,
                           std::uint64_t cap = kDefaultCap) {
  const FiberSet b = ball_fibers(w.n, k, nullptr, cap);
  const FiberSet d = symmetric_difference(b, b.left_multiply(sigma));
  const std::vector<Rational> one(w.size(), Rational(1));
  const Rational num = weighted_sums(w, key_histogram(w, d), one, x).second;
  const Rational den = weighted_sums(w, key_histogram(w, b), one, x).second;
  return num / den;
}

/// Weighted mass of the t-boundary of B_k over the mass of B_k, t = d(sigma, e).
inline Rational nsfc_boundary_bound(const WeightedAction& w, std::int64_t k, const LatticePoint& sigma, std::size_t x,
                                    std::uint64_t cap = kDefaultCap) {
  const double t = norm(sigma);
  FiberSet s(w.n);
  for_each_t_boundary_point(w.n, k, t, [&](const LatticePoint& p) { s.insert(p); }, cap);
  s.normalize();
  const std::vector<Rational> one(w.size(), Rational(1));
  const Rational num = weighted_sums(w, key_histogram(w, s), one, x).second;
  const Rational den = weighted_sums(w, ball_histogram(w, k, cap), one, x).second;
  return num / den;
}

// ---------------------------------------------------------------------------
// Maximal lemma and inequality

using LatticeFunction = std::map<LatticePoint, Rational>;

/// Largest number of selected balls through one point.
inline std::size_t subcover_multiplicity(const std::vector<LatticeBall>& balls, std::uint64_t cap = kDefaultCap) {
  std::unordered_map<LatticePoint, std::size_t, LatticePointHash> hits;
  std::size_t best = 0;
  for (const auto& b : balls) {
    const FiberSet f = ball_fibers_sq(b.center.dim(), b.radius_sq, cap).right_multiply(b.center);
    f.for_each_point([&](const LatticePoint& p) { best = std::max(best, ++hits[p]); });
    if (hits.size() > cap) throw ResourceCapError(hits.size(), cap);
  }
  return best;
}

struct MaximalCheck {
  Rational lhs;  // ||a||_1
  Rational rhs;  // eps / C * sum_{h in H} b(h)
  bool holds = false;
  std::size_t H_size = 0;
  std::size_t C_used = 0;
  std::size_t C_instance = 0;  // multiplicity of the Besicovitch subcover of this instance
  bool covered = true;         // the subcover covers H
};

/// C_emp = 0 means: use the multiplicity measured on this instance.
inline MaximalCheck discrete_maximal_check(const LatticeFunction& a, const LatticeFunction& b, std::int64_t k,
                                           const Rational& eps, std::size_t C_emp = 0, std::uint64_t cap = kDefaultCap) {
  if (k < 1) throw std::invalid_argument("discrete_maximal_check: k must be >= 1");
  if (eps <= 0) throw std::invalid_argument("discrete_maximal_check: eps must be positive");
  for (const auto& [p, v] : b)
    if (v < 0) throw std::invalid_argument("discrete_maximal_check: b must be nonnegative");
  MaximalCheck out;
  for (const auto& [p, v] : a) out.lhs += v < 0 ? Rational(-v) : v;
  if (a.empty() && b.empty()) {
    out.C_used = std::max<std::size_t>(C_emp, 1);
    out.holds = true;
    return out;
  }
  const std::size_t n = !a.empty() ? a.begin()->first.dim() : b.begin()->first.dim();

  // g^{-1} for g in B_k with the least i such that g is in B_i.
  std::vector<std::pair<LatticePoint, std::int64_t>> inv;
  ball_fibers(n, k, nullptr, cap).for_each_point([&](const LatticePoint& g) {
    std::int64_t i = 1;
    while (!dist_le_exact(g, LatticePoint::identity(n), i)) ++i;
    inv.emplace_back(inverse(g), i);
  });

  // s_i a(h) and s_i b(h) by level, for h with B_k h meeting supp a.
  std::map<LatticePoint, std::vector<Rational>> sa, sb;
  for (const auto& [y, v] : a)
    for (const auto& [gi, i] : inv) {
      auto& row = sa[multiply(gi, y)];
      if (row.empty()) row.assign(static_cast<std::size_t>(k) + 1, Rational(0));
      row[static_cast<std::size_t>(i)] += v;
    }
  if (sa.size() > cap) throw ResourceCapError(sa.size(), cap);
  for (const auto& [y, v] : b)
    for (const auto& [gi, i] : inv) {
      const LatticePoint h = multiply(gi, y);
      if (!sa.count(h)) continue;
      auto& row = sb[h];
      if (row.empty()) row.assign(static_cast<std::size_t>(k) + 1, Rational(0));
      row[static_cast<std::size_t>(i)] += v;
    }

  std::vector<LatticeBall> carpet;
  Rational bH = 0;
  for (const auto& [h, ra] : sa) {
    Rational ca = 0, cb = 0;
    const auto it = sb.find(h);
    for (std::int64_t i = 1; i <= k; ++i) {
      ca += ra[static_cast<std::size_t>(i)];
      if (it != sb.end()) cb += it->second[static_cast<std::size_t>(i)];
      if (ca > eps * cb) {
        carpet.push_back({h, i * i});
        const auto bh = b.find(h);
        if (bh != b.end()) bH += bh->second;
        break;
      }
    }
  }
  out.H_size = carpet.size();
  if (!carpet.empty()) {
    const Carpet c{carpet};
    const auto sel = besicovitch_select(c);
    out.C_instance = subcover_multiplicity(sel, cap);
    std::vector<LatticePoint> centres;
    for (const auto& x : carpet) centres.push_back(x.center);
    out.covered = covers(sel, centres);
  }
  out.C_used = C_emp > 0 ? C_emp : std::max<std::size_t>(out.C_instance, 1);
  out.rhs = eps * bH / static_cast<unsigned long long>(out.C_used);
  out.holds = out.lhs >= out.rhs;
  return out;
}

/// Largest subcover multiplicity over random carpets of balls with radius
/// at most k_max and centres in a box of side 2 k_max.
inline std::size_t measure_besicovitch_constant(std::size_t n, std::int64_t k_max, std::size_t trials,
                                                std::size_t balls, std::uint64_t seed, std::uint64_t cap = kDefaultCap) {
  std::size_t best = 1;
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 g(stream_seed(seed, t));
    const Carpet c = random_lattice_carpet(g, n, k_max, balls, k_max);
    best = std::max(best, subcover_multiplicity(besicovitch_select(c), cap));
  }
  return best;
}

/// max_{k <= k_max} |B_k B_k| / |B_k|, exact.
inline Rational measure_doubling_constant(std::size_t n, std::int64_t k_max, std::uint64_t cap = kDefaultCap) {
  Rational best = 0;
  for (const auto& row : doubling_table(n, k_max, cap))
    best = std::max(best, Rational(static_cast<long long>(row.card_sq), static_cast<long long>(row.card)));
  return best;
}

struct MaximalExperiment {
  Rational lhs;    // mu(max_{k <= k_max} |A_k f| > eps)
  Rational bound;  // C D / eps * ||f||_1
  bool holds = false;
  std::vector<Rational> sup;  // max_k |A_k f(x)| per x
};

inline MaximalExperiment maximal_inequality_experiment(const WeightedAction& w, const std::vector<Rational>& f,
                                                       const Rational& eps, std::int64_t k_max, std::size_t C_emp,
                                                       const Rational& D_emp, std::uint64_t cap = kDefaultCap) {
  if (eps <= 0) throw std::invalid_argument("maximal_inequality_experiment: eps must be positive");
  if (k_max < 1) throw std::invalid_argument("maximal_inequality_experiment: k_max must be >= 1");
  if (f.size() != w.size()) throw std::invalid_argument("maximal_inequality_experiment: f must be defined on X");
  MaximalExperiment out;
  out.sup.assign(w.size(), Rational(0));
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const KeyHistogram h = ball_histogram(w, k, cap);
    for (std::size_t x = 0; x < w.size(); ++x) {
      Rational v = average_from_histogram(w, h, f, k, x).value;
      if (v < 0) v = -v;
      out.sup[x] = std::max(out.sup[x], v);
    }
  }
  Rational norm1 = 0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    norm1 += (f[x] < 0 ? Rational(-f[x]) : f[x]) * w.mu[x];
    if (out.sup[x] > eps) out.lhs += w.mu[x];
  }
  out.bound = Rational(static_cast<unsigned long long>(C_emp)) * D_emp / eps * norm1;
  out.holds = out.lhs <= out.bound;
  return out;
}

}  // namespace heis

#endif  // HEIS_ERGODIC_HPP
