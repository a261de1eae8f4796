#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "ilab/error.hpp"
#include "ilab/generators.hpp"
#include "oracles.hpp"

using namespace ilab;
using namespace ilab::pointsets;

namespace {
double dist(const PointSet& P, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t a = 0; a < P.dim(); ++a) s += (P.coord(i, a) - P.coord(j, a)) * (P.coord(i, a) - P.coord(j, a));
  return std::sqrt(s);
}
}  // namespace

TEST(Valtr, SmallGridCoordinates) {
  const auto P = gen_valtr(2, 2);
  ASSERT_EQ(P.size(), 8u);
  EXPECT_EQ(P.label(), Provenance::valtr);
  EXPECT_EQ(P.denominator(0), 2);
  EXPECT_EQ(P.denominator(1), 4);
  std::set<double> xs, ys;
  for (std::size_t i = 0; i < P.size(); ++i) {
    xs.insert(P.coord(i, 0));
    ys.insert(P.coord(i, 1));
  }
  EXPECT_EQ(xs, (std::set<double>{0.0, 0.5}));
  EXPECT_EQ(ys, (std::set<double>{0.25, 0.5, 0.75, 1.0}));
}

TEST(Valtr, DegenerateAndCounts) {
  const auto one = gen_valtr(1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.coord(0, 0), 0.0);
  EXPECT_EQ(one.coord(0, 1), 0.0);
  EXPECT_EQ(one.coord(0, 2), 1.0);
  EXPECT_EQ(gen_valtr(3, 2).size(), 27u);
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint32_t d = 2; d <= 4; ++d) {
      EXPECT_EQ(gen_valtr(n, d).size(), static_cast<std::size_t>(std::pow(n, d + 1))) << n << " " << d;
    }
  }
}

TEST(Valtr, Errors) {
  EXPECT_THROW(gen_valtr(0, 2), ParameterError);
  EXPECT_THROW(gen_valtr(2, 1), ParameterError);
  EXPECT_THROW(gen_valtr(1u << 20, 4), CapacityError);
}

TEST(Lenz, CrossCircleDistances) {
  const auto P = gen_lenz(8);
  ASSERT_EQ(P.size(), 8u);
  ASSERT_EQ(P.dim(), 4u);
  EXPECT_EQ(P.denominator(0), Int{1} << kLenzResolutionBits);
  // (1,0,0,0) is the first point of circle A, (0,0,1,0) the first of circle B
  EXPECT_NEAR(dist(P, 0, 4), std::numbers::sqrt2, 1e-12);
  int cross = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const bool ai = i < 4, aj = j < 4;
      if (ai == aj) continue;
      ++cross;
      EXPECT_NEAR(dist(P, i, j), std::numbers::sqrt2, 4e-12);
    }
  }
  EXPECT_EQ(cross, 32);
}

TEST(Lenz, FourPointsAtZeroAndPi) {
  const auto P = gen_lenz(4);
  ASSERT_EQ(P.size(), 4u);
  EXPECT_EQ(P.coord(0, 0), 1.0);
  EXPECT_EQ(P.coord(1, 0), -1.0);
  EXPECT_NEAR(P.coord(1, 1), 0.0, 1e-12);
  EXPECT_EQ(P.coord(2, 2), 1.0);
  EXPECT_EQ(P.coord(3, 2), -1.0);
}

TEST(Lenz, Errors) {
  EXPECT_THROW(gen_lenz(7), ParameterError);
  EXPECT_THROW(gen_lenz(2), ParameterError);
}

TEST(Lattice, Grids) {
  const auto P = gen_lattice(3, 2);
  ASSERT_EQ(P.size(), 9u);
  const auto one = gen_lattice(1, 5);
  ASSERT_EQ(one.size(), 1u);
  for (std::size_t a = 0; a < 5; ++a) EXPECT_EQ(one.coord(0, a), 0.0);
  const auto Q = gen_lattice(10, 2);
  ASSERT_EQ(Q.size(), 100u);
  double best = 10.0;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    for (std::size_t j = i + 1; j < Q.size(); ++j) best = std::min(best, dist(Q, i, j));
  }
  EXPECT_NEAR(best, 0.1, 1e-15);
}

TEST(Cantor, MiddleThirds) {
  const double alpha = std::log(2.0) / std::log(3.0);
  const auto c1 = gen_cantor_centers({alpha, 1});
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1.denominator, 6);
  EXPECT_EQ(c1.numerators, (std::vector<Int>{1, 5}));
  const auto c2 = gen_cantor_centers({alpha, 2});
  EXPECT_EQ(c2.denominator, 18);
  EXPECT_EQ(c2.numerators, (std::vector<Int>{1, 5, 13, 17}));
  const auto c0 = gen_cantor_centers({0.37, 0});
  ASSERT_EQ(c0.size(), 1u);
  EXPECT_DOUBLE_EQ(c0.value(0), 0.5);
}

TEST(Cantor, MatchesRecursionEveryLevel) {
  const double alpha = std::log(2.0) / std::log(3.0);
  for (unsigned lv = 0; lv <= 8; ++lv) {
    const auto c = gen_cantor_centers({alpha, lv});
    const auto ref = oracle::cantor_recursive(1.0L / 3.0L, lv);
    ASSERT_EQ(c.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(c.value(i), static_cast<double>(ref[i]), 1e-15);
  }
}

TEST(Cantor, SeparationProperty) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = g.real(0.05, 0.95);
    const unsigned levels = static_cast<unsigned>(g.integer(0, 7));
    const CantorParams p{alpha, levels};
    const auto c = gen_cantor_centers(p);
    ASSERT_EQ(c.size(), std::size_t{1} << levels);
    const double lam = p.lambda();
    EXPECT_LT(lam, 0.5);
    EXPECT_NEAR(p.ratio(), 1.0 / lam, 1e-12);
    const double gap = std::pow(lam, levels) * (1.0 - 2.0 * lam);
    for (std::size_t i = 1; i < c.size(); ++i) {
      const double step = static_cast<double>(c.numerators[i] - c.numerators[i - 1]) / static_cast<double>(c.denominator);
      EXPECT_GE(step, gap * (1.0 - 1e-9)) << alpha << " " << levels;
    }
  }
}

TEST(Cantor, Validation) {
  EXPECT_THROW(gen_cantor_centers({0.0, 1}), ParameterError);
  EXPECT_THROW(gen_cantor_centers({1.0, 1}), ParameterError);
  EXPECT_THROW(gen_cantor_centers({1.5, 1}), ParameterError);
}

TEST(Mattila2, Examples) {
  const auto P0 = gen_mattila2(0.5, 0);
  ASSERT_EQ(P0.size(), 2u);
  std::set<std::pair<double, double>> s0;
  for (std::size_t i = 0; i < 2; ++i) s0.insert({P0.coord(i, 0), P0.coord(i, 1)});
  EXPECT_EQ(s0, (std::set<std::pair<double, double>>{{-0.5, 0.5}, {0.5, 0.5}}));

  const auto P1 = gen_mattila2(0.5, 1);
  ASSERT_EQ(P1.size(), 16u);
  std::set<double> xs, ys;
  for (std::size_t i = 0; i < P1.size(); ++i) {
    xs.insert(P1.coord(i, 0));
    ys.insert(P1.coord(i, 1));
  }
  EXPECT_EQ(xs, (std::set<double>{-0.875, -0.125, 0.125, 0.875}));
  EXPECT_EQ(ys, (std::set<double>{0.125, 0.375, 0.625, 0.875}));

  EXPECT_EQ(gen_mattila2(std::log(2.0) / std::log(3.0), 2).size(), 72u);
  EXPECT_EQ(mattila2_rows(0.5, 3), 64u);
}

TEST(Mattila2, SizeFormula) {
  for (double alpha : {0.3, 0.48, 0.5, 0.7}) {
    for (unsigned lv = 0; lv <= 4; ++lv) {
      const auto P = gen_mattila2(alpha, lv);
      EXPECT_EQ(P.size(), 2u * (1u << lv) * mattila2_rows(alpha, lv));
      EXPECT_EQ(mattila2_rows(alpha, lv),
                static_cast<std::uint64_t>(std::ceil(std::pow(2.0, lv / alpha) - 1e-9)));
    }
  }
}

TEST(Mattila3, Examples) {
  const auto P0 = gen_mattila3(0.5, 0);
  ASSERT_EQ(P0.size(), 1u);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_DOUBLE_EQ(P0.coord(0, a), 0.5);
  EXPECT_EQ(gen_mattila3(0.5, 1).size(), 8u);
  const auto ex = mattila3_exponents(0.5);
  EXPECT_DOUBLE_EQ(ex.s, 1.25);
  EXPECT_DOUBLE_EQ(ex.alpha, 0.5);
  EXPECT_DOUBLE_EQ(ex.beta, 0.25);
  EXPECT_THROW(mattila3_exponents(0.7), ParameterError);
  EXPECT_THROW(mattila3_exponents(0.0), ParameterError);
}

TEST(Mattila3, TinyVerticalRatioStaysExact) {
  // delta = 1/15: beta = 1/30, lambda = 2^-30; level 5 centers need ~2^-124 resolution
  const auto P = gen_mattila3(1.0 / 15.0, 5);
  EXPECT_EQ(P.size(), 32768u);
}

TEST(PointSetInvariants, RejectsBadInput) {
  EXPECT_THROW(PointSet(2, {2, 2}, {1, 1, 1, 1}), InputError);  // duplicate
  EXPECT_THROW(PointSet(2, {2, 2}, {3, 0}), InputError);        // outside [-1,1]
  EXPECT_THROW(PointSet(2, {2, 0}, {1, 0}), InputError);        // zero denominator
  EXPECT_THROW(PointSet(2, {2}, {1, 0}), InputError);           // missing denominator
  EXPECT_THROW(PointSet(2, {2, 2}, {1, 0, 1}), InputError);     // ragged
  const PointSet ok(2, {2, 4}, {1, -3, -2, 4});
  EXPECT_EQ(ok.size(), 2u);
  EXPECT_EQ(ok.coord_text(0, 1), "-3/4");
}

TEST(Determinism, RepeatedCallsAreIdentical) {
  EXPECT_EQ(gen_valtr(5, 3), gen_valtr(5, 3));
  EXPECT_EQ(gen_lenz(64), gen_lenz(64));
  EXPECT_EQ(gen_mattila2(0.48, 3), gen_mattila2(0.48, 3));
  EXPECT_EQ(gen_mattila3(1.0 / 15.0, 3), gen_mattila3(1.0 / 15.0, 3));
  EXPECT_EQ(gen_lattice(7, 3), gen_lattice(7, 3));
}

TEST(Bounds, EveryGeneratorStaysInCube) {
  const PointSet sets[] = {gen_valtr(4, 3), gen_lenz(32), gen_lattice(5, 2), gen_mattila2(0.6, 3),
                           gen_mattila3(0.3, 2)};
  for (const auto& P : sets) {
    for (double c : P.coords()) {
      EXPECT_GE(c, -1.0);
      EXPECT_LE(c, 1.0);
    }
  }
}
