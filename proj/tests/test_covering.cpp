#include <gtest/gtest.h>

#include "heis/covering.hpp"

using namespace heis;

namespace {

LatticeBall ball(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t rsq) {
  return {LatticePoint({a}, {b}, m), rsq};
}

Carpet random_carpet(SplitMix64& g, std::size_t count) {
  std::set<LatticePoint> seen;
  Carpet c;
  while (c.balls.size() < count) {
    LatticePoint p({g.uniform_int(-15, 15)}, {g.uniform_int(-15, 15)}, 0);
    p.m = 2 * g.uniform_int(-60, 60) + (p.ab_dot() & 1);
    if (!seen.insert(p).second) continue;
    const std::int64_t r = g.uniform_int(1, 8);
    c.balls.push_back({p, r * r});
  }
  return c;
}

}  // namespace

TEST(Covering, WellSeparatedExamples) {
  EXPECT_TRUE(is_well_separated({ball(0, 0, 0, 1)}));
  EXPECT_TRUE(is_well_separated({ball(0, 0, 0, 1), ball(3, 0, 0, 1)}));
  EXPECT_FALSE(is_well_separated({ball(0, 0, 0, 1), ball(2, 0, 0, 1)}));
  EXPECT_THROW(is_well_separated({}), std::invalid_argument);
}

TEST(Covering, SphereSeparatedExamples) {
  EXPECT_TRUE(is_sphere_separated({ball(0, 0, 0, 1)}));
  // Concentric spheres are |r1 - r2| apart.
  EXPECT_TRUE(is_sphere_separated({ball(0, 0, 0, 4), ball(0, 0, 0, 36)}));   // gap 4 >= 2
  EXPECT_FALSE(is_sphere_separated({ball(0, 0, 0, 16), ball(0, 0, 0, 36)}));  // gap 2 < 4
  // Spheres far apart and spheres crossing.
  EXPECT_TRUE(is_sphere_separated({ball(0, 0, 0, 1), ball(4, 0, 0, 1)}));
  EXPECT_FALSE(is_sphere_separated({ball(0, 0, 0, 4), ball(1, 0, 0, 4)}));
}

TEST(Covering, SphereDistanceMinimizer) {
  // Two unit spheres about points 3 apart along a horizontal line: the
  // closest points are on that line, at distance 1.
  const auto sd = detail::sphere_distance(ContinuousPoint{{Complex(0, 0)}, 0}, 1.0,
                                          ContinuousPoint{{Complex(3, 0)}, 0}, 1.0);
  EXPECT_NEAR(sd.lower, 1.0, 1e-12);
  EXPECT_NEAR(sd.estimate, 1.0, 1e-6);
  // Vertically displaced: small sphere inside the big one, off centre.
  const auto sd2 = detail::sphere_distance(ContinuousPoint{{Complex(0, 0)}, 0}, 3.0,
                                           ContinuousPoint{{Complex(0, 0)}, 2.0}, 0.5);
  EXPECT_GE(sd2.estimate, sd2.lower - 1e-12);
  EXPECT_GT(sd2.estimate, 0.0);
}

TEST(Covering, BesicovitchExamples) {
  Carpet one{{ball(0, 0, 0, 4)}};
  EXPECT_EQ(besicovitch_select(one).size(), 1u);
  // Concentric specs cannot share a centre; use a covered second centre.
  Carpet two{{ball(0, 0, 0, 4), ball(1, 0, 0, 1)}};
  const auto sel = besicovitch_select(two);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0].radius_sq, 4);
  Carpet dup{{ball(0, 0, 0, 4), ball(0, 0, 0, 1)}};
  EXPECT_THROW(besicovitch_select(dup), std::invalid_argument);
}

TEST(Covering, RandomCarpets) {
  std::size_t worst = 0, palette = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SplitMix64 g(stream_seed(7, s));
    const Carpet c = random_carpet(g, 200);
    const auto sel = besicovitch_select(c);
    ASSERT_TRUE(covers(sel, c.base()));
    ASSERT_TRUE(is_incremental(sel));
    worst = std::max(worst, multiplicity(sel, c.base()));
    const auto col = colour_partition(sel, 1);
    palette = std::max(palette, col.palette);
    std::size_t total = 0;
    for (const auto& cls : col.classes) {
      total += cls.size();
      EXPECT_TRUE(is_well_separated(pick(sel, cls)));
    }
    EXPECT_EQ(total, sel.size());
  }
  EXPECT_GE(worst, 1u);
  EXPECT_GE(palette, 1u);
}

TEST(Covering, ColourExamples) {
  // Far-apart equal balls: one colour.
  std::vector<LatticeBall> far{ball(0, 0, 0, 1), ball(10, 0, 0, 1), ball(20, 0, 0, 1)};
  EXPECT_EQ(colour_partition(far, 1).palette, 1u);
  // A path of touching equal balls: two colours alternate.
  std::vector<LatticeBall> path{ball(0, 0, 0, 1), ball(3, 0, 0, 1), ball(6, 0, 0, 1), ball(9, 0, 0, 1)};
  // Gap between neighbours is 1, not < r = 1, so these are already separated;
  // move them closer.
  std::vector<LatticeBall> tight{ball(0, 0, 0, 1), ball(2, 0, 0, 1), ball(4, 0, 0, 1), ball(6, 0, 0, 1)};
  const auto col = colour_partition(tight, 1);
  EXPECT_EQ(col.palette, 2u);
  EXPECT_TRUE(col.overflow);
  EXPECT_EQ(col.colour, (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_EQ(colour_partition(path, 2).palette, 1u);
  std::vector<LatticeBall> bad{ball(0, 0, 0, 1), ball(5, 0, 0, 4)};
  EXPECT_THROW(colour_partition(bad, 2), std::invalid_argument);
}

TEST(Covering, Net) {
  EXPECT_EQ(covering_net(1, 2.5).N, 1u);
  const auto n05 = covering_net(1, 0.5).N, n1 = covering_net(1, 1.0).N, n2 = covering_net(1, 2.0).N;
  EXPECT_GE(n05, n1);
  EXPECT_GE(n1, n2);
  EXPECT_EQ(n2, 1u);
  EXPECT_THROW(covering_net(1, 0.0), std::invalid_argument);
  EXPECT_THROW(covering_net(2, 0.05, 1000), ResourceCapError);
}

TEST(Covering, StackHeight) {
  HeightParams hp;
  hp.chi = 1;
  hp.kappa = 0;
  EXPECT_EQ(stack_height(hp).q, 0);
  hp.kappa = 1;
  auto h1 = stack_height(hp);
  EXPECT_EQ(h1.q, 8);
  EXPECT_TRUE(h1.stated_holds);
  hp.kappa = 2;
  auto h2 = stack_height(hp);
  EXPECT_EQ(h2.q, 136);
  EXPECT_EQ(h2.p_list[1], 16);
  EXPECT_EQ(h2.q_list[1], 16);
  EXPECT_TRUE(h2.stated_holds);
  EXPECT_FALSE(h2.proof_holds);
  // Monotonicity.
  BigInt prev = 0;
  for (int k = 0; k <= 6; ++k) {
    hp.kappa = k;
    const auto h = stack_height(hp);
    EXPECT_GE(h.q, prev);
    EXPECT_TRUE(h.stated_holds) << k;
    prev = h.q;
  }
  HeightParams a, b;
  a.kappa = b.kappa = 3;
  b.chi = 2;
  EXPECT_LE(stack_height(a).q, stack_height(b).q);
  b = a;
  b.eps = Rational(3, 4);
  EXPECT_GE(stack_height(a).q, stack_height(b).q);
  hp.eps = 0;
  EXPECT_THROW(stack_height(hp), std::invalid_argument);
}

TEST(Covering, BoundgenSynthetic) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = random_boundgen_instance(stream_seed(3, s));
    const auto res = boundgen_select(inst.nu, inst.F, inst.stack, inst.eps, inst.delta, inst.t, inst.chi);
    EXPECT_GE(res.k, 2u);
    EXPECT_TRUE(res.post_i);
    EXPECT_TRUE(res.post_ii);
    for (const auto& c : res.hypotheses) EXPECT_TRUE(c.pass) << c.clause;
  }
}

TEST(Covering, BoundgenHypothesisViolations) {
  auto inst = random_boundgen_instance(11);
  // Shrink delta: p changes, so the height clause fails.
  EXPECT_THROW(boundgen_select(inst.nu, inst.F, inst.stack, inst.eps, Rational(1, 10), inst.t, 1), HypothesisError);
  // Mass outside F: nu(F) <= delta nu(M).
  auto nu = inst.nu;
  nu.weights[LatticePoint::identity(12)] = 100;
  try {
    boundgen_select(nu, inst.F, inst.stack, inst.eps, inst.delta, inst.t, 1);
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.clause(), "(2) nu(F) > delta nu(M)");
  }
  // Radii growth.
  auto stack = inst.stack;
  std::swap(stack[0], stack[2]);
  EXPECT_THROW(boundgen_select(inst.nu, inst.F, stack, inst.eps, inst.delta, inst.t, 1), HypothesisError);
}

TEST(Covering, ChainMassBound) {
  double R = 0;
  const auto inst = random_chain_instance(1, R);
  HeightParams hp;
  hp.kappa = 1;
  hp.eps = inst.eps;
  hp.delta = inst.delta;
  hp.R = R;
  // Heavy mass far from every ball and shell.
  DiscreteMeasure nu = inst.nu;
  LatticePoint far = LatticePoint::identity(12);
  far.a[0] = 1'000'000'000;
  nu.weights[far] = 10000;
  EXPECT_TRUE(extract_sphere_chain(nu, inst.F, inst.stack, hp, inst.t).mass_bound);
}

TEST(Covering, ChainExtraction) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    double R = 0;
    const auto inst = random_chain_instance(stream_seed(9, s), R);
    HeightParams hp;
    hp.kappa = 1;
    hp.chi = 1;
    hp.eps = inst.eps;
    hp.delta = inst.delta;
    hp.R = R;
    const auto res = extract_sphere_chain(inst.nu, inst.F, inst.stack, hp, inst.t);
    ASSERT_FALSE(res.mass_bound);
    ASSERT_EQ(res.stages.size(), 1u);
    EXPECT_GE(2 * res.stages[0].mass, res.stages[0].prev_mass);
    ASSERT_TRUE(res.x.has_value());
    ASSERT_EQ(res.chain.size(), 1u);
    for (const auto& c : res.chain_checks) EXPECT_TRUE(c.pass) << c.clause;
  }
}
