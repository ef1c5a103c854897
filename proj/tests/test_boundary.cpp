#include <gtest/gtest.h>

#include <random>

#include "heis/boundary.hpp"

using namespace heis;

TEST(Boundary, TrivialCases) {
  const ContinuousPoint o = ContinuousPoint::identity(1);
  const ContinuousPoint on{{Complex(0.6, 0)}, 0.8};
  EXPECT_TRUE(boundary_contains(on, BallSpec{o, 1.0, 0.0}).inside());
  EXPECT_FALSE(boundary_contains(o, BallSpec{o, 2.0, 1.0}).inside());
  EXPECT_TRUE(boundary_contains(o, BallSpec{o, 2.0, 2.0}).inside());
  EXPECT_THROW(boundary_contains(o, BallSpec{o, 0.0, 1.0}), std::invalid_argument);
}

TEST(Boundary, DilationWitness) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 500; ++i) {
    const ContinuousPoint x{{Complex(u(rng), u(rng))}, u(rng)};
    const ContinuousPoint y{{Complex(u(rng), u(rng))}, u(rng)};
    const double d = metric_d(y, x), r = 2.0;
    const double bound = std::sqrt(std::abs(d * d - r * r));
    const auto res = boundary_contains(y, BallSpec{x, r, bound + 1e-12});
    EXPECT_TRUE(res.inside());
    EXPECT_LE(res.lower, res.upper + 1e-12);
    EXPECT_NEAR(metric_d(res.witness, x), r, 1e-9);
  }
}

TEST(Boundary, MonotoneInThickening) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-4, 4);
  const ContinuousPoint o = ContinuousPoint::identity(1);
  for (int i = 0; i < 300; ++i) {
    const ContinuousPoint y{{Complex(u(rng), u(rng))}, 3 * u(rng)};
    bool seen_in = false;
    for (double t = 0.0; t <= 3.0; t += 0.25) {
      const bool in = boundary_contains(y, BallSpec{o, 3.0, t}).inside();
      if (seen_in) EXPECT_TRUE(in);
      seen_in = seen_in || in;
    }
  }
}

TEST(Boundary, MinimizerAgreesWithDenseSampling) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  std::normal_distribution<double> g;
  for (int i = 0; i < 40; ++i) {
    const ContinuousPoint y{{Complex(u(rng), u(rng))}, u(rng)};
    const auto sp = detail::minimize_sphere_distance(y, 1.5);
    double best = 1e300;
    for (int s = 0; s < 20000; ++s) {
      std::vector<double> v{g(rng), g(rng), g(rng)};
      detail::project(v);
      best = std::min(best, metric_d(y, detail::sphere_point(v, 1.5)));
    }
    EXPECT_LE(sp.dist, best + 1e-6);
  }
}

TEST(Boundary, TZeroCountsSphere) {
  for (std::int64_t k : {1, 2, 5}) {
    std::uint64_t on = 0;
    ball_fibers(1, k).for_each_point([&](const LatticePoint& p) { on += dist_eq_exact(p, LatticePoint::identity(1), k); });
    EXPECT_EQ(t_boundary_count(1, k, 0.0), on);
  }
}

TEST(Boundary, ContainedInLargerBallAndDecays) {
  const double t = 1.0;
  for_each_t_boundary_point(1, 6, t, [&](const LatticePoint& p) {
    EXPECT_LE(norm(p), 6.0 + t + 1e-12);
  });
  const double r5 = double(t_boundary_count(1, 5, t)) / double(ball_cardinality(1, 5));
  const double r20 = double(t_boundary_count(1, 20, t)) / double(ball_cardinality(1, 20));
  EXPECT_LT(r20, r5);
}

TEST(Boundary, SymmetricDifferenceInsideThickenedSphere) {
  const LatticePoint o = LatticePoint::identity(1);
  for (bool re : {true, false}) {
    const LatticePoint s = LatticePoint::generator(1, 0, re);
    for (std::int64_t k : {1, 3, 8}) {
      const auto b = ball_fibers(1, k);
      symmetric_difference(b, b.left_multiply(s)).for_each_point([&](const LatticePoint& y) {
        EXPECT_TRUE(boundary_contains(y, o, k * k, 1.0).inside());
      });
    }
  }
}

TEST(Boundary, GlobalTestAgreesWithMinimizer) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3, 3), ut(0.05, 2.0);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 1 + i % 2;
    ContinuousPoint y = ContinuousPoint::identity(n);
    for (auto& c : y.z) c = Complex(u(rng), u(rng));
    y.tau = 2 * u(rng);
    const double r = 2.5, t = ut(rng);
    const double dist = detail::minimize_sphere_distance(y, r).dist;
    if (std::abs(dist - t) < 1e-6) continue;
    ++checked;
    const auto e = detail::ball_meets_sphere(y, r, t);
    ASSERT_EQ(e.meets, dist < t) << "dist=" << dist << " t=" << t;
    if (e.meets) {
      EXPECT_NEAR(norm(*e.witness), r, 1e-9);
      EXPECT_LE(metric_d(y, *e.witness), t + 1e-9);
    }
  }
  EXPECT_GT(checked, 390);
}
