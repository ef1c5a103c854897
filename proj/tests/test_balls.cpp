#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "heis/balls.hpp"

using namespace heis;

namespace {

// Independent scan of the full candidate box |a_j|,|b_j| <= k, |m| <= 2k^2.
std::vector<LatticePoint> brute_ball(std::size_t n, std::int64_t k) {
  std::vector<LatticePoint> out;
  const std::size_t dims = 2 * n;
  std::vector<std::int64_t> v(dims, -k);
  while (true) {
    std::int64_t z2 = 0, ab = 0;
    for (std::size_t j = 0; j < dims; ++j) z2 += v[j] * v[j];
    for (std::size_t j = 0; j < n; ++j) ab += v[j] * v[n + j];
    for (std::int64_t m = -2 * k * k; m <= 2 * k * k; ++m) {
      if (((m - ab) & 1) != 0) continue;
      const __int128 lhs = static_cast<__int128>(4) * k * k * z2 + static_cast<__int128>(m) * m;
      if (lhs <= static_cast<__int128>(4) * k * k * k * k)
        out.emplace_back(std::vector<std::int64_t>(v.begin(), v.begin() + n),
                         std::vector<std::int64_t>(v.begin() + n, v.end()), m);
    }
    std::size_t i = 0;
    while (i < dims && v[i] == k) v[i++] = -k;
    if (i == dims) break;
    ++v[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Balls, SmallCardinalities) {
  const auto b1 = enumerate_ball(1, 1);
  EXPECT_EQ(b1.cardinality, 7u);
  const std::set<LatticePoint> expect{LatticePoint({0}, {0}, -2), LatticePoint({0}, {0}, 0), LatticePoint({0}, {0}, 2),
                                      LatticePoint({1}, {0}, 0),  LatticePoint({-1}, {0}, 0), LatticePoint({0}, {1}, 0),
                                      LatticePoint({0}, {-1}, 0)};
  EXPECT_EQ(std::set<LatticePoint>(b1.points.begin(), b1.points.end()), expect);
  EXPECT_EQ(ball_cardinality(1, 2), 65u);
}

TEST(Balls, MatchesBruteForceOracle) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::int64_t kmax = n == 1 ? 10 : 4;
    for (std::int64_t k = 1; k <= kmax; ++k) {
      EXPECT_EQ(enumerate_ball(n, k).points, brute_ball(n, k)) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Balls, TranslatedBallIsRightTranslate) {
  const LatticePoint c({2}, {-1}, 3);
  const auto b = enumerate_ball(1, 3);
  const auto bc = enumerate_ball(1, 3, &c);
  std::vector<LatticePoint> expect;
  for (const auto& p : b.points) expect.push_back(multiply(p, c));
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(bc.points, expect);
  for (const auto& p : bc.points) EXPECT_TRUE(dist_le_exact(p, c, 3));
}

TEST(Balls, NestingAndSymmetry) {
  for (std::int64_t k = 1; k < 8; ++k) {
    const auto b = ball_fibers(1, k), b1 = ball_fibers(1, k + 1);
    EXPECT_EQ(set_difference(b, b1).count(), 0u);
  }
  const auto pts = enumerate_ball(2, 3).points;
  const std::set<LatticePoint> s(pts.begin(), pts.end());
  for (const auto& p : pts) {
    EXPECT_TRUE(s.count(isometry_flip(p)));
    EXPECT_TRUE(s.count(isometry_rotate({1, 0}, p)));
    EXPECT_TRUE(s.count(isometry_rotate({3, 2}, p)));
  }
}

TEST(Balls, ResourceCap) {
  EXPECT_THROW(ball_fibers(2, 50, nullptr, 1000), ResourceCapError);
  EXPECT_THROW(ball_fibers(1, 0), std::invalid_argument);
}

TEST(Balls, ProductSetMatchesPairwise) {
  const auto b1 = enumerate_ball(1, 1).points;
  std::set<LatticePoint> pairwise;
  for (const auto& p : b1)
    for (const auto& q : b1) pairwise.insert(multiply(p, q));
  const auto prod = product_set(b1, b1);
  EXPECT_EQ(std::vector<LatticePoint>(pairwise.begin(), pairwise.end()), prod);
  for (const auto& p : prod) EXPECT_TRUE(dist_le_exact(p, LatticePoint::identity(1), 2));

  const std::vector<LatticePoint> id{LatticePoint::identity(1)};
  EXPECT_EQ(product_set(id, b1), b1);

  const auto b2 = enumerate_ball(1, 2).points;
  std::set<LatticePoint> pw2;
  for (const auto& p : b2)
    for (const auto& q : b1) pw2.insert(multiply(p, q));
  EXPECT_EQ(std::vector<LatticePoint>(pw2.begin(), pw2.end()), product_set(b2, b1));
}

TEST(Balls, DoublingTable) {
  const auto rows = doubling_table(1, 6);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].card, 7u);
  EXPECT_EQ(rows[0].card_sq, product_set(enumerate_ball(1, 1).points, enumerate_ball(1, 1).points).size());
  for (const auto& r : rows) EXPECT_LE(r.card_sq, ball_cardinality(1, 2 * r.k));
}

TEST(Balls, FolnerRatio) {
  const auto id = LatticePoint::identity(1);
  EXPECT_EQ(folner_ratio(1, 5, id).ratio, 0);
  const auto e1 = LatticePoint::generator(1, 0);
  const auto r5 = folner_ratio(1, 5, e1), r40 = folner_ratio(1, 40, e1);
  EXPECT_LT(r40.ratio, r5.ratio);

  // Compare the fibre computation with an explicit set computation.
  const auto pts = enumerate_ball(1, 6).points;
  const std::set<LatticePoint> b(pts.begin(), pts.end());
  std::set<LatticePoint> sb;
  for (const auto& p : pts) sb.insert(multiply(e1, p));
  std::uint64_t sd = 0;
  for (const auto& p : b) sd += !sb.count(p);
  for (const auto& p : sb) sd += !b.count(p);
  EXPECT_EQ(folner_ratio(1, 6, e1).sym_diff, sd);
}
