#ifndef HEIS_COVERING_HPP
#define HEIS_COVERING_HPP

// Carpets, stacks and the selection machinery built on them: greedy
// Besicovitch selection, colouring into well-separated classes, nets of the
// unit ball, the boundary-selection recursion and the stack-height recursion.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/errors.hpp"
#include "heis/rational.hpp"
#include "heis/rng.hpp"

namespace heis {

/// Closed ball { y : d(y, center) <= r } with r^2 = radius_sq (exact).
struct LatticeBall {
  LatticePoint center;
  std::int64_t radius_sq = 1;

  double radius() const { return std::sqrt(static_cast<double>(radius_sq)); }
  bool contains(const LatticePoint& y) const { return compare_distance_sq(y, center, radius_sq) <= 0; }
  bool boundary_contains(const LatticePoint& y, double t) const {
    return heis::boundary_contains(y, center, radius_sq, t).inside();
  }
  BallSpec spec(double t = 0.0) const { return {center.to_continuous(), radius(), t}; }

  friend bool operator==(const LatticeBall&, const LatticeBall&) = default;
};

/// Larger radius first, then by centre.
inline bool selection_order(const LatticeBall& x, const LatticeBall& y) {
  if (x.radius_sq != y.radius_sq) return x.radius_sq > y.radius_sq;
  return x.center < y.center;
}

/// One ball per point of the base set.
struct Carpet {
  std::vector<LatticeBall> balls;

  std::vector<LatticePoint> base() const {
    std::vector<LatticePoint> e;
    e.reserve(balls.size());
    for (const auto& b : balls) e.push_back(b.center);
    std::sort(e.begin(), e.end());
    return e;
  }
  void validate() const {
    auto e = base();
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("Carpet: more than one ball per centre");
    for (const auto& b : balls)
      if (b.radius_sq <= 0) throw std::invalid_argument("Carpet: radius must be positive");
  }
  Carpet restricted_to(const std::set<LatticePoint>& keep) const {
    Carpet c;
    for (const auto& b : balls)
      if (keep.count(b.center)) c.balls.push_back(b);
    return c;
  }
  std::int64_t rmin_sq() const;
  std::int64_t rmax_sq() const;
};

inline std::int64_t rmin_sq(const std::vector<LatticeBall>& v) {
  if (v.empty()) throw std::invalid_argument("rmin of an empty collection");
  std::int64_t r = v.front().radius_sq;
  for (const auto& b : v) r = std::min(r, b.radius_sq);
  return r;
}
inline std::int64_t rmax_sq(const std::vector<LatticeBall>& v) {
  if (v.empty()) throw std::invalid_argument("rmax of an empty collection");
  std::int64_t r = v.front().radius_sq;
  for (const auto& b : v) r = std::max(r, b.radius_sq);
  return r;
}
inline std::int64_t Carpet::rmin_sq() const { return heis::rmin_sq(balls); }
inline std::int64_t Carpet::rmax_sq() const { return heis::rmax_sq(balls); }

using Stack = std::vector<Carpet>;

inline void validate_stack(const Stack& s) {
  if (s.empty()) throw std::invalid_argument("Stack: no carpets");
  const auto base = s.front().base();
  for (const auto& c : s) {
    c.validate();
    if (c.base() != base) throw std::invalid_argument("Stack: carpets over different base sets");
  }
}

/// Finitely supported measure with nonnegative rational weights.
struct DiscreteMeasure {
  std::map<LatticePoint, Rational> weights;

  void validate() const {
    for (const auto& [p, w] : weights)
      if (w < 0) throw std::invalid_argument("DiscreteMeasure: negative weight");
  }
  Rational total() const {
    Rational s = 0;
    for (const auto& [p, w] : weights) s += w;
    return s;
  }
  Rational weight(const LatticePoint& p) const {
    auto it = weights.find(p);
    return it == weights.end() ? Rational(0) : it->second;
  }
  template <class Range>
  Rational mass(const Range& pts) const {
    Rational s = 0;
    for (const auto& p : pts) s += weight(p);
    return s;
  }
  template <class Pred>
  Rational mass_if(Pred&& pred) const {
    Rational s = 0;
    for (const auto& [p, w] : weights)
      if (w != 0 && pred(p)) s += w;
    return s;
  }
};

struct HeightParams {
  std::int64_t chi = 1;
  std::int64_t kappa = 0;
  Rational eps{1, 2};
  Rational delta{1, 2};
  double R = 2.0;

  void validate() const {
    if (chi < 1) throw std::invalid_argument("HeightParams: chi must be >= 1");
    if (kappa < 0) throw std::invalid_argument("HeightParams: kappa must be >= 0");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("HeightParams: eps must lie in (0,1)");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("HeightParams: delta must lie in (0,1)");
    if (!(R > 1.0)) throw std::invalid_argument("HeightParams: R must exceed 1");
  }
};

struct ClauseCheck {
  std::string clause;
  bool pass = false;
  std::string detail;
};
using Checklist = std::vector<ClauseCheck>;

inline void throw_first_failure(const Checklist& c) {
  for (const auto& k : c)
    if (!k.pass) throw HypothesisError(k.clause, k.detail);
}

inline BigInt ceil_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  BigInt d = num / den;
  if (d * den != num && num > 0) d += 1;
  return d;
}

// ---------------------------------------------------------------------------
// Separation

/// max(0, d(c1,c2) - r1 - r2): a lower bound for the distance between balls.
inline double ball_gap(const LatticeBall& x, const LatticeBall& y) {
  return std::max(0.0, metric_d(x.center, y.center) - x.radius() - y.radius());
}

inline bool is_well_separated(const std::vector<LatticeBall>& V) {
  if (V.empty()) throw std::invalid_argument("is_well_separated: empty collection");
  const double rmin = std::sqrt(static_cast<double>(rmin_sq(V)));
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = i + 1; j < V.size(); ++j)
      if (ball_gap(V[i], V[j]) < rmin) return false;
  return true;
}

struct SphereDistance {
  double lower = 0.0;     // certified
  double estimate = 0.0;  // distance between two explicit sphere points
};

namespace detail {

/// Distance between the r-spheres about two points. The certified bound uses
/// d(s, c2) in [|d12 - r1|, d12 + r1] for s on the first sphere.
inline SphereDistance sphere_distance(const ContinuousPoint& c1, double r1, const ContinuousPoint& c2, double r2,
                                      double stop_below = -1.0) {
  const double d12 = metric_d(c1, c2);
  const double lo = std::abs(d12 - r1), hi = d12 + r1;
  SphereDistance out;
  out.lower = r2 < lo ? lo - r2 : (r2 > hi ? r2 - hi : 0.0);
  const std::size_t n = c1.dim(), dim = 2 * n + 1;
  auto point = [&](const std::vector<double>& v, std::size_t off, double r, const ContinuousPoint& c) {
    std::vector<double> u(v.begin() + static_cast<std::ptrdiff_t>(off),
                          v.begin() + static_cast<std::ptrdiff_t>(off + dim));
    return multiply(sphere_point(u, r), c);
  };
  auto f = [&](const std::vector<double>& v) { return metric_d(point(v, 0, r1, c1), point(v, dim, r2, c2)); };
  auto project_blocks = [&](std::vector<double>& v) {
    for (std::size_t off : {std::size_t{0}, dim}) {
      std::vector<double> u(v.begin() + static_cast<std::ptrdiff_t>(off),
                            v.begin() + static_cast<std::ptrdiff_t>(off + dim));
      project(u);
      std::copy(u.begin(), u.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
    }
  };

  // Starts: sphere points along the line of centres, plus axis pairs.
  std::vector<std::vector<double>> seeds1, seeds2;
  const ContinuousPoint rel12 = multiply(c2, inverse(c1)), rel21 = multiply(c1, inverse(c2));
  auto radial = [&](const ContinuousPoint& rel, double r) {
    std::vector<std::vector<double>> s;
    if (!rel.is_identity()) {
      auto v = sphere_coords_of(dilate(r / norm(rel), rel), r);
      s.push_back(v);
      for (auto& x : v) x = -x;
      s.push_back(v);
    }
    return s;
  };
  seeds1 = radial(rel12, r1);
  seeds2 = radial(rel21, r2);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> v(dim, 0.0);
    v[j] = 1.0;
    seeds1.push_back(v);
    seeds2.push_back(v);
    v[j] = -1.0;
    seeds1.push_back(v);
    seeds2.push_back(v);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s1 : seeds1) {
    for (const auto& s2 : seeds2) {
      std::vector<double> v(s1);
      v.insert(v.end(), s2.begin(), s2.end());
      project_blocks(v);
      // Cheap screen: only descend from the better starts.
      if (f(v) > best + 2.0 * (r1 + r2)) continue;
      double fv = f(v);
      std::vector<double> g(v.size()), trial(v.size());
      double step = 0.25 * std::max(1.0, std::min(r1, r2));
      for (int it = 0; it < 300; ++it) {
        const double h = 1e-7;
        for (std::size_t i = 0; i < v.size(); ++i) {
          trial = v;
          trial[i] += h;
          project_blocks(trial);
          const double fp = f(trial);
          trial = v;
          trial[i] -= h;
          project_blocks(trial);
          g[i] = (fp - f(trial)) / (2 * h);
        }
        double gn = 0.0;
        for (double x : g) gn += x * x;
        gn = std::sqrt(gn);
        if (gn < 1e-14) break;
        bool improved = false;
        while (step > 1e-13) {
          for (std::size_t i = 0; i < v.size(); ++i) trial[i] = v[i] - step * g[i] / gn;
          project_blocks(trial);
          const double ft = f(trial);
          if (ft < fv) {
            const double gain = fv - ft;
            v = trial;
            fv = ft;
            improved = true;
            step *= 2.0;
            if (gain < 1e-13) it = 300;
            break;
          }
          step *= 0.5;
        }
        if (!improved) break;
      }
      best = std::min(best, fv);
      if (best < stop_below) {
        out.estimate = best;
        return out;
      }
    }
  }
  out.estimate = std::max(best, out.lower);
  return out;
}

}  // namespace detail

inline constexpr double kSphereSeparationTolerance = 1e-6;

/// Pairwise distances between the spheres of V are at least rmin V.
inline bool is_sphere_separated(const std::vector<LatticeBall>& V, double tol = kSphereSeparationTolerance) {
  if (V.empty()) throw std::invalid_argument("is_sphere_separated: empty collection");
  const double rmin = std::sqrt(static_cast<double>(rmin_sq(V)));
  for (std::size_t i = 0; i < V.size(); ++i) {
    for (std::size_t j = i + 1; j < V.size(); ++j) {
      const auto sd = detail::sphere_distance(V[i].center.to_continuous(), V[i].radius(),
                                              V[j].center.to_continuous(), V[j].radius(), rmin - tol);
      if (sd.lower >= rmin) continue;
      if (sd.estimate < rmin - tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Selection and colouring

/// Greedy: repeatedly take a largest ball whose centre is not yet covered.
inline std::vector<LatticeBall> besicovitch_select(const Carpet& carpet) {
  carpet.validate();
  std::vector<LatticeBall> order = carpet.balls;
  std::sort(order.begin(), order.end(), selection_order);
  std::vector<LatticeBall> out;
  for (const auto& b : order) {
    bool covered = false;
    for (const auto& s : out)
      if (s.contains(b.center)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(b);
  }
  return out;
}

/// Radii non-increasing and no centre inside an earlier ball.
inline bool is_incremental(const std::vector<LatticeBall>& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0 && seq[i].radius_sq > seq[i - 1].radius_sq) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (seq[j].contains(seq[i].center)) return false;
  }
  return true;
}

/// max over y in pts of the number of balls containing y.
inline std::size_t multiplicity(const std::vector<LatticeBall>& balls, const std::vector<LatticePoint>& pts) {
  std::size_t best = 0;
  for (const auto& y : pts) {
    std::size_t c = 0;
    for (const auto& b : balls) c += b.contains(y);
    best = std::max(best, c);
  }
  return best;
}

inline bool covers(const std::vector<LatticeBall>& balls, const std::vector<LatticePoint>& pts) {
  for (const auto& y : pts) {
    bool in = false;
    for (const auto& b : balls)
      if (b.contains(y)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  return true;
}

struct ColourResult {
  std::vector<std::size_t> colour;                 // per input ball, 0-based
  std::vector<std::vector<std::size_t>> classes;   // indices into the input
  std::size_t palette = 0;                         // colours used
  bool overflow = false;                           // palette > configured chi
};

/// Each ball gets the smallest colour unused by the earlier balls within
/// distance r of it, r being the radius of its predecessor.
inline ColourResult colour_partition(const std::vector<LatticeBall>& seq, std::int64_t chi) {
  if (chi < 1) throw std::invalid_argument("colour_partition: chi must be >= 1");
  if (!is_incremental(seq)) throw std::invalid_argument("colour_partition: input is not incremental");
  ColourResult res;
  res.colour.resize(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::set<std::size_t> used;
    if (k > 0) {
      const double r = seq[k - 1].radius();
      for (std::size_t i = 0; i < k; ++i)
        if (ball_gap(seq[i], seq[k]) < r) used.insert(res.colour[i]);
    }
    std::size_t c = 0;
    while (used.count(c)) ++c;
    res.colour[k] = c;
    if (c >= res.classes.size()) res.classes.resize(c + 1);
    res.classes[c].push_back(k);
  }
  res.palette = res.classes.size();
  res.overflow = res.palette > static_cast<std::size_t>(chi);
  return res;
}

inline std::vector<LatticeBall> pick(const std::vector<LatticeBall>& seq, const std::vector<std::size_t>& idx) {
  std::vector<LatticeBall> v;
  for (auto i : idx) v.push_back(seq[i]);
  return v;
}

// ---------------------------------------------------------------------------
// Nets

struct NetResult {
  std::size_t N = 0;
  std::vector<ContinuousPoint> centers;
  std::size_t grid_points = 0;
  double spacing = 0.0;
  bool verified = false;
};

/// Greedy net of the unit ball (the Euclidean unit ball) by balls of radius
/// rho/2 centred in it, over a grid of spacing rho/8. Grid points at distance
/// exactly rho/2 count as covered.
inline NetResult covering_net(std::size_t n, double rho, std::uint64_t cap = kDefaultCap) {
  if (n == 0) throw std::invalid_argument("covering_net: dimension must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("covering_net: rho must be positive");
  NetResult res;
  res.spacing = rho / 8.0;
  const auto steps = static_cast<std::int64_t>(std::floor(1.0 / res.spacing));
  const std::size_t dim = 2 * n + 1;
  const auto side = static_cast<std::uint64_t>(2 * steps + 1);
  const auto predicted = detail::saturating_pow(side, dim);
  if (predicted > cap) throw ResourceCapError(predicted, cap);

  std::vector<ContinuousPoint> grid;
  std::vector<std::int64_t> idx(dim, -steps);
  while (true) {
    double s2 = 0.0;
    for (auto i : idx) s2 += static_cast<double>(i * i);
    if (s2 * res.spacing * res.spacing <= 1.0 + 1e-12) {
      std::vector<double> v(dim);
      for (std::size_t j = 0; j < dim; ++j) v[j] = static_cast<double>(idx[j]) * res.spacing;
      grid.push_back(detail::sphere_point(v, 1.0));
    }
    std::size_t i = 0;
    while (i < dim && idx[i] == steps) idx[i++] = -steps;
    if (i == dim) break;
    ++idx[i];
  }
  res.grid_points = grid.size();
  const double half = rho / 2.0;
  auto covered = [&](const ContinuousPoint& x) {
    for (auto it = res.centers.rbegin(); it != res.centers.rend(); ++it)
      if (metric_d(*it, x) <= half) return true;
    return false;
  };
  res.centers.push_back(ContinuousPoint::identity(n));
  for (const auto& x : grid)
    if (!covered(x)) res.centers.push_back(x);
  res.N = res.centers.size();
  res.verified = std::all_of(grid.begin(), grid.end(), covered);
  if (!res.verified) throw std::runtime_error("covering_net: grid resolution insufficient");
  return res;
}

// ---------------------------------------------------------------------------
// Boundary selection

struct BoundgenStage {
  std::size_t l = 0;
  Rational covered;         // nu(F cap union of 2r(l)-shells of V)
  Rational e_mass;          // nu(E)
  Rational selected_mass;   // nu(E cap union U')
  std::size_t palette = 0;  // colours used when splitting U_{p-l}
  bool well_separable_bound = false;  // selected_mass >= nu(E)/chi
};

struct BoundgenResult {
  Checklist hypotheses;
  std::size_t p = 0;
  std::size_t k = 0;  // 1-based stack index, >= 2
  std::vector<LatticeBall> V;
  std::int64_t r_sq = 0;  // rmax U_{k-1}, squared
  bool post_i = false;
  Rational post_ii_mass, post_ii_half;
  bool post_ii = false;
  std::vector<BoundgenStage> stages;
};

namespace detail {

inline bool in_shell_union(const std::vector<LatticeBall>& V, const LatticePoint& y, double t) {
  for (const auto& b : V)
    if (b.boundary_contains(y, t)) return true;
  return false;
}

inline bool in_ball_union(const std::vector<LatticeBall>& V, const LatticePoint& y) {
  for (const auto& b : V)
    if (b.contains(y)) return true;
  return false;
}

inline std::string rat(const Rational& q) { return to_string(q); }

/// Clause (4): nu(d_t B) > eps nu(B) for every ball of the stack.
inline ClauseCheck shell_mass_clause(const DiscreteMeasure& nu, const Stack& stack, const Rational& eps, double t) {
  ClauseCheck c{"(4) nu(boundary_t B) > eps nu(B)", true, "all stack balls"};
  for (std::size_t i = 0; i < stack.size(); ++i) {
    for (const auto& b : stack[i].balls) {
      const Rational shell = nu.mass_if([&](const LatticePoint& y) { return b.boundary_contains(y, t); });
      const Rational ball = nu.mass_if([&](const LatticePoint& y) { return b.contains(y); });
      if (!(shell > eps * ball)) {
        c.pass = false;
        c.detail = "carpet " + std::to_string(i + 1) + ": shell mass " + rat(shell) + " vs ball mass " + rat(ball);
        return c;
      }
    }
  }
  return c;
}

inline ClauseCheck base_clause(const Stack& stack, const std::vector<LatticePoint>& F) {
  ClauseCheck c{"(3) stack over F", true, ""};
  try {
    validate_stack(stack);
  } catch (const std::invalid_argument& e) {
    c.pass = false;
    c.detail = e.what();
    return c;
  }
  std::vector<LatticePoint> f(F);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (stack.front().base() != f) {
    c.pass = false;
    c.detail = "carpet base differs from F";
  }
  return c;
}

}  // namespace detail

/// Hypotheses of the boundary-selection lemma, evaluated (not trusted).
inline Checklist boundgen_hypotheses(const DiscreteMeasure& nu, const std::vector<LatticePoint>& F, const Stack& stack,
                                     const Rational& eps, const Rational& delta, double t, std::int64_t chi) {
  Checklist out;
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1) || !(t >= 0.0) || chi < 1)
    throw std::invalid_argument("boundgen: eps, delta must lie in (0,1), t >= 0, chi >= 1");
  {
    ClauseCheck c{"(1) nu is a finite measure", true, "total " + detail::rat(nu.total())};
    for (const auto& [p, w] : nu.weights)
      if (w < 0) c.pass = false;
    out.push_back(c);
  }
  {
    std::set<LatticePoint> fs(F.begin(), F.end());
    const Rational nf = nu.mass(fs), nm = nu.total();
    out.push_back({"(2) nu(F) > delta nu(M)", nf > delta * nm, "nu(F) = " + detail::rat(nf) + ", nu(M) = " + detail::rat(nm)});
  }
  const BigInt p = ceil_rational(Rational(2 * chi) / (eps * delta));
  out.push_back({"height p = ceil(2 chi/(eps delta))", BigInt(stack.size()) == p,
                 "p = " + p.str() + ", height " + std::to_string(stack.size())});
  out.push_back(detail::base_clause(stack, F));
  if (!out.back().pass || stack.empty()) return out;
  {
    ClauseCheck c{"(3) rmin U_i > 2 rmax U_{i-1}", true, ""};
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (!(stack[i].rmin_sq() > 4 * stack[i - 1].rmax_sq())) {
        c.pass = false;
        c.detail = "fails at i = " + std::to_string(i + 1);
      }
    out.push_back(c);
  }
  out.push_back({"(3) rmin U_1 > 2t", static_cast<long double>(stack.front().rmin_sq()) > 4.0L * t * t,
                 "rmin^2 = " + std::to_string(stack.front().rmin_sq())});
  out.push_back(detail::shell_mass_clause(nu, stack, eps, t));
  return out;
}

/// Recursion of the boundary-selection lemma. Stage l works with U_{p-l};
/// it stops once the 2 rmax U_{p-l} shells of V carry more than half of
/// nu(F), giving k = p - l + 1.
inline BoundgenResult boundgen_select(const DiscreteMeasure& nu, const std::vector<LatticePoint>& F, const Stack& stack,
                                      const Rational& eps, const Rational& delta, double t, std::int64_t chi) {
  BoundgenResult res;
  res.hypotheses = boundgen_hypotheses(nu, F, stack, eps, delta, t, chi);
  throw_first_failure(res.hypotheses);
  res.p = stack.size();
  const std::size_t p = res.p;
  const std::set<LatticePoint> fset(F.begin(), F.end());
  const Rational nf = nu.mass(fset);

  std::vector<LatticeBall> V;
  for (std::size_t l = 0; l < p; ++l) {
    const Carpet& U = stack[p - l - 1];
    const double two_r = 2.0 * std::sqrt(static_cast<double>(U.rmax_sq()));
    BoundgenStage st;
    st.l = l;
    std::set<LatticePoint> E;
    for (const auto& y : fset) {
      if (detail::in_shell_union(V, y, two_r)) st.covered += nu.weight(y);
      else E.insert(y);
    }
    if (st.covered > nf / 2) {
      res.stages.push_back(st);
      res.k = p - l + 1;
      res.V = V;
      res.r_sq = U.rmax_sq();
      break;
    }
    if (l + 1 == p)
      throw HypothesisError("well-separability with constant chi",
                            "recursion reached stage p-1 without covering half of nu(F)");
    // Well-separated sub-carpet of U restricted to E carrying the most mass.
    st.e_mass = nu.mass(E);
    const auto seq = besicovitch_select(U.restricted_to(E));
    const auto col = colour_partition(seq, chi);
    st.palette = col.palette;
    std::vector<LatticeBall> best;
    for (const auto& cls : col.classes) {
      const auto cand = pick(seq, cls);
      const Rational m = nu.mass_if([&](const LatticePoint& y) { return E.count(y) && detail::in_ball_union(cand, y); });
      if (best.empty() || m > st.selected_mass) {
        best = cand;
        st.selected_mass = m;
      }
    }
    st.well_separable_bound = st.selected_mass * chi >= st.e_mass;
    res.stages.push_back(st);
    V.insert(V.end(), best.begin(), best.end());
  }

  // Postconditions, recomputed from scratch.
  res.post_i = res.V.empty() || is_sphere_separated(res.V);
  const double two_r = 2.0 * std::sqrt(static_cast<double>(res.r_sq));
  res.post_ii_mass = nu.mass_if([&](const LatticePoint& y) { return fset.count(y) && detail::in_shell_union(res.V, y, two_r); });
  res.post_ii_half = nf / 2;
  res.post_ii = res.post_ii_mass > res.post_ii_half;
  if (!res.post_i || !res.post_ii || res.k < 2)
    throw std::logic_error("boundgen: postcondition failed (k=" + std::to_string(res.k) + ")");
  return res;
}

// ---------------------------------------------------------------------------
// Stack height

struct StackHeight {
  BigInt q = 0;
  std::vector<BigInt> q_list;  // q_0 .. q_kappa
  std::vector<BigInt> p_list;  // p_0 .. p_{kappa-1}
  double stated_bound = 0.0;   // kappa (2 sqrt2 chi/(eps delta))^kappa sqrt2^(kappa^2)
  double proof_bound = 0.0;    // same with exponents kappa-1, (kappa-1)^2
  bool stated_holds = false;
  bool proof_holds = false;
};

inline StackHeight stack_height(const HeightParams& hp) {
  hp.validate();
  StackHeight s;
  const auto kappa = static_cast<std::size_t>(hp.kappa);
  s.q_list.assign(kappa + 1, 0);
  s.p_list.assign(kappa, 0);
  const Rational base = Rational(hp.chi) / (hp.eps * hp.delta);
  for (std::size_t i = kappa; i-- > 0;) {
    s.p_list[i] = ceil_rational(base * Rational(BigInt(1) << (i + 1)));
    s.q_list[i] = s.p_list[i] * (1 + s.q_list[i + 1]);
  }
  s.q = s.q_list[0];
  const double k = static_cast<double>(hp.kappa);
  const double c = 2.0 * std::sqrt(2.0) * to_double(base);
  s.stated_bound = k * std::pow(c, k) * std::pow(std::sqrt(2.0), k * k);
  s.proof_bound = hp.kappa == 0 ? 0.0 : k * std::pow(c, k - 1) * std::pow(std::sqrt(2.0), (k - 1) * (k - 1));
  const double qd = s.q.convert_to<double>();
  s.stated_holds = qd <= s.stated_bound;
  s.proof_holds = qd <= s.proof_bound;
  return s;
}

// ---------------------------------------------------------------------------
// Chain construction

struct ChainLink {
  LatticePoint x;      // x_i
  std::int64_t r_sq;   // r(i)^2
  double t;            // t(i)
};

struct ChainStage {
  std::size_t i = 0;       // 1-based
  std::size_t n_i = 0;
  std::size_t N_i = 0;
  double t_i = 0.0;
  Rational mass;           // nu(F_i)
  Rational prev_mass;      // nu(F_{i-1})
  std::size_t selected = 0;
  std::size_t k = 0;       // from the boundary-selection lemma
};

struct ChainExtraction {
  Checklist hypotheses;
  bool mass_bound = false;        // nu(F) <= delta nu(M)
  std::vector<ChainStage> stages;
  std::optional<LatticePoint> x;  // a point of F_kappa
  std::vector<ChainLink> chain;
  Checklist chain_checks;         // conditions (a)-(c) and x in every shell
};

inline Checklist chain_extraction_hypotheses(const DiscreteMeasure& nu, const std::vector<LatticePoint>& F, const Stack& stack,
                                     const HeightParams& hp, double t) {
  hp.validate();
  Checklist out;
  out.push_back({"(1) nu is a finite measure", true, "total " + detail::rat(nu.total())});
  for (const auto& [p, w] : nu.weights)
    if (w < 0) out.back().pass = false;
  const StackHeight h = stack_height(hp);
  out.push_back({"height >= q", BigInt(stack.size()) >= h.q, "q = " + h.q.str() + ", height " + std::to_string(stack.size())});
  out.push_back(detail::base_clause(stack, F));
  if (!out.back().pass || stack.empty()) return out;
  {
    ClauseCheck c{"(3a) rmin U_i > 2 (rmax U_{i-1})^2", true, ""};
    for (std::size_t i = 1; i < stack.size(); ++i) {
      // r_i > 2 R^2  <=>  r_i^2 > 4 R^4 with both sides exact.
      const __int128 lhs = stack[i].rmin_sq();
      const __int128 rm = stack[i - 1].rmax_sq();
      if (!(lhs > 4 * rm * rm)) {
        c.pass = false;
        c.detail = "fails at i = " + std::to_string(i + 1);
      }
    }
    out.push_back(c);
  }
  const double m = std::max(t, hp.R);
  out.push_back({"(3b) rmin U_1 > 7 max(t, R)", static_cast<long double>(stack.front().rmin_sq()) > 49.0L * m * m,
                 "rmin^2 = " + std::to_string(stack.front().rmin_sq())});
  out.push_back(detail::shell_mass_clause(nu, stack, hp.eps, t));
  return out;
}

/// Runs the nested construction F = F_0 > F_1 > ... > F_kappa. Either
/// nu(F) <= delta nu(M), or a point x of F_kappa and a chain x_1..x_kappa
/// with x in every thickened sphere of the chain.
inline ChainExtraction extract_sphere_chain(const DiscreteMeasure& nu, const std::vector<LatticePoint>& F, const Stack& stack,
                                     const HeightParams& hp, double t) {
  ChainExtraction res;
  res.hypotheses = chain_extraction_hypotheses(nu, F, stack, hp, t);
  throw_first_failure(res.hypotheses);
  std::set<LatticePoint> Fi(F.begin(), F.end());
  const Rational nm = nu.total();
  if (nu.mass(Fi) <= hp.delta * nm) {
    res.mass_bound = true;
    return res;
  }
  const StackHeight h = stack_height(hp);
  const auto kappa = static_cast<std::size_t>(hp.kappa);
  std::size_t N = 0;
  std::vector<std::vector<LatticeBall>> Vs;
  std::vector<double> ts;
  Rational delta_i = hp.delta;
  for (std::size_t i = 0; i < kappa; ++i) {
    const auto p_i = h.p_list[i].convert_to<std::size_t>();
    const auto stride = (1 + h.q_list[i + 1]).convert_to<std::size_t>();
    Stack sub;
    for (std::size_t j = 1; j <= p_i; ++j) sub.push_back(stack[N + j * stride - 1].restricted_to(Fi));
    const std::vector<LatticePoint> fvec(Fi.begin(), Fi.end());
    const BoundgenResult bg = boundgen_select(nu, fvec, sub, hp.eps, delta_i, t, hp.chi);
    ChainStage st;
    st.i = i + 1;
    st.k = bg.k;
    st.n_i = bg.k - 1;
    N += st.n_i * stride;
    st.N_i = N;
    st.t_i = 2.0 * std::sqrt(static_cast<double>(stack[N - 1].rmax_sq()));
    st.prev_mass = nu.mass(Fi);
    std::set<LatticePoint> next;
    for (const auto& y : Fi)
      if (detail::in_shell_union(bg.V, y, st.t_i)) next.insert(y);
    st.mass = nu.mass(next);
    st.selected = bg.V.size();
    if (!(2 * st.mass >= st.prev_mass))
      throw std::logic_error("extract_sphere_chain: stage " + std::to_string(i + 1) + " lost more than half the mass");
    res.stages.push_back(st);
    Vs.push_back(bg.V);
    ts.push_back(st.t_i);
    Fi = std::move(next);
    delta_i /= 2;
  }
  if (kappa == 0 || Fi.empty()) return res;

  const LatticePoint x = *Fi.begin();
  res.x = x;
  for (std::size_t i = 0; i < kappa; ++i) {
    for (const auto& b : Vs[i]) {
      if (b.boundary_contains(x, ts[i])) {
        res.chain.push_back({b.center, b.radius_sq, ts[i]});
        break;
      }
    }
  }
  // Conditions of the intersection-dimension definition, re-certified.
  double prod = 1.0;
  for (std::size_t i = 0; i < res.chain.size(); ++i) {
    const auto& c = res.chain[i];
    prod *= c.t;
    const std::string idx = std::to_string(i + 1);
    res.chain_checks.push_back({"(a) t(" + idx + ") >= 1", c.t >= 1.0, ""});
    res.chain_checks.push_back({"(b) r(" + idx + ") >= t(1)...t(" + idx + ") R",
                                std::sqrt(static_cast<double>(c.r_sq)) >= prod * hp.R, ""});
    bool inc = true;
    for (std::size_t j = 0; j < i; ++j)
      inc = inc && boundary_contains(c.x, res.chain[j].x, res.chain[j].r_sq, res.chain[j].t).inside();
    res.chain_checks.push_back({"(c) x_" + idx + " in earlier shells", inc, ""});
    res.chain_checks.push_back(
        {"x in shell " + idx, boundary_contains(x, c.x, c.r_sq, c.t).inside(), "common intersection is nonempty"});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Synthetic instances

/// A hierarchical instance: levels 1..L each own K orthogonal real axes, and
/// F has one point per choice of axis at every level. Level i carpets use
/// radius s_i sqrt(2), the distance between two points whose choices differ
/// only at level i. All points are right-translated by `shift` and rotated
/// by quarter turns.
struct SyntheticInstance {
  DiscreteMeasure nu;
  std::vector<LatticePoint> F;
  Stack stack;
  double t = 1.0;
  Rational eps{7, 10};
  Rational delta{97, 100};
  std::int64_t chi = 1;
  std::vector<std::int64_t> scales;
};

inline SyntheticInstance make_hierarchical_instance(const std::vector<std::int64_t>& scales, std::size_t K,
                                                    const LatticePoint& shift, const std::vector<int>& turns,
                                                    double t) {
  if (scales.empty() || K < 2) throw std::invalid_argument("synthetic instance: need scales and K >= 2");
  const std::size_t L = scales.size(), n = L * K;
  if (shift.dim() != n || turns.size() != n) throw std::invalid_argument("synthetic instance: dimension mismatch");
  SyntheticInstance inst;
  inst.t = t;
  inst.scales = scales;
  std::size_t total = 1;
  for (std::size_t i = 0; i < L; ++i) total *= K;
  for (std::size_t code = 0; code < total; ++code) {
    LatticePoint p = LatticePoint::identity(n);
    std::size_t c = code;
    for (std::size_t lvl = 0; lvl < L; ++lvl) {
      p.a[lvl * K + c % K] = scales[lvl];
      c /= K;
    }
    inst.F.push_back(multiply(isometry_rotate(turns, p), shift));
  }
  std::sort(inst.F.begin(), inst.F.end());
  for (const auto& x : inst.F) inst.nu.weights[x] = 1;
  for (std::size_t lvl = 0; lvl < L; ++lvl) {
    Carpet c;
    for (const auto& x : inst.F) c.balls.push_back({x, 2 * scales[lvl] * scales[lvl]});
    inst.stack.push_back(std::move(c));
  }
  return inst;
}

namespace detail {

inline LatticePoint random_shift(SplitMix64& g, std::size_t n, std::int64_t span) {
  LatticePoint p = LatticePoint::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.a[j] = g.uniform_int(-span, span);
    p.b[j] = g.uniform_int(-span, span);
  }
  p.m = 2 * g.uniform_int(-10 * span, 10 * span) + (p.ab_dot() & 1);
  return p;
}

inline std::vector<int> random_turns(SplitMix64& g, std::size_t n) {
  std::vector<int> t(n);
  for (auto& x : t) x = static_cast<int>(g.uniform_int(0, 3));
  return t;
}

}  // namespace detail

/// Carpet of up to `balls` balls with centres in the box |a|,|b| <= span,
/// |m| <= 2 span^2 and radii uniform in 1..r_max (duplicate centres merged).
inline Carpet random_lattice_carpet(SplitMix64& g, std::size_t n, std::int64_t span, std::size_t balls,
                                    std::int64_t r_max) {
  std::map<LatticePoint, std::int64_t> chosen;
  for (std::size_t i = 0; i < balls; ++i) {
    LatticePoint p = LatticePoint::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
      p.a[j] = g.uniform_int(-span, span);
      p.b[j] = g.uniform_int(-span, span);
    }
    p.m = 2 * g.uniform_int(-span * span, span * span) + (p.ab_dot() & 1);
    const std::int64_t r = g.uniform_int(1, r_max);
    chosen.emplace(p, r * r);
  }
  Carpet c;
  for (const auto& [p, rs] : chosen) c.balls.push_back({p, rs});
  return c;
}

/// Random instance meeting every hypothesis of the boundary-selection lemma:
/// three levels of four axes (n = 12), counting measure on the 64 points,
/// chi = 1, eps in [0.70, 0.74], delta in [0.96, 0.99] (so p = 3), t in [1, 3].
inline SyntheticInstance random_boundgen_instance(std::uint64_t seed) {
  SplitMix64 g(seed);
  const double t = g.uniform(1.0, 3.0);
  const double rt2 = std::sqrt(2.0);
  const auto s1 = static_cast<std::int64_t>(std::floor(rt2 * t)) + 1 + g.uniform_int(0, 3);
  const auto s2 = std::max<std::int64_t>(2 * s1 + 1, static_cast<std::int64_t>(std::ceil(s1 * s1 / (t * rt2)))) +
                  g.uniform_int(0, 5);
  const auto s3 = std::max<std::int64_t>(2 * s2 + 1,
                                         static_cast<std::int64_t>(std::ceil((s1 * s1 + s2 * s2) / (t * rt2)))) +
                  g.uniform_int(0, 20);
  const std::size_t n = 12;
  const auto shift = detail::random_shift(g, n, 5);
  const auto turns = detail::random_turns(g, n);
  SyntheticInstance inst = make_hierarchical_instance({s1, s2, s3}, 4, shift, turns, t);
  inst.eps = Rational(g.uniform_int(70, 74), 100);
  inst.delta = Rational(g.uniform_int(96, 99), 100);
  inst.chi = 1;
  return inst;
}

/// Random instance for the chain construction with kappa = 1: squared radius
/// growth r_i > 2 r_{i-1}^2 and r_1 > 7 max(t, R), with t in [1, 1.5].
inline SyntheticInstance random_chain_instance(std::uint64_t seed, double& R) {
  SplitMix64 g(seed);
  const double t = g.uniform(1.0, 1.5);
  R = g.uniform(1.01, 1.5);
  const double c = 2.0 * std::sqrt(2.0);
  const std::int64_t s1 = g.uniform_int(8, 10);
  const auto s2 = static_cast<std::int64_t>(std::floor(c * double(s1 * s1))) + 1 + g.uniform_int(0, 3);
  const auto s3 = static_cast<std::int64_t>(std::floor(c * double(s2) * double(s2))) + 1 + g.uniform_int(0, 3);
  const std::size_t n = 12;
  const auto shift = detail::random_shift(g, n, 3);
  const auto turns = detail::random_turns(g, n);
  SyntheticInstance inst = make_hierarchical_instance({s1, s2, s3}, 4, shift, turns, t);
  inst.eps = Rational(g.uniform_int(70, 74), 100);
  inst.delta = Rational(g.uniform_int(96, 99), 100);
  inst.chi = 1;
  return inst;
}

}  // namespace heis

#endif  // HEIS_COVERING_HPP
