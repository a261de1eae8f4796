#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ilab/error.hpp"
#include "ilab/latticecount.hpp"
#include "oracles.hpp"

using namespace ilab;
using namespace ilab::lattice;

TEST(BallCount, Examples) {
  const auto r = ball_count(2, 5.0);
  EXPECT_EQ(r.count, 81u);
  EXPECT_NEAR(r.volume_term, 25.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(r.discrepancy, 2.4601836602551685, 1e-12);
  EXPECT_EQ(ball_count(2, 0.0).count, 1u);
  EXPECT_EQ(ball_count(3, 0.0).count, 1u);
  EXPECT_EQ(ball_count(3, 1.0).count, 7u);
  EXPECT_EQ(ball_count(2, 0.999999).count, 1u);
}

TEST(BallCount, MatchesEnumeration2D) {
  for (int r = 0; r <= 50; ++r) {
    EXPECT_EQ(ball_count(2, r).count, oracle::lattice_le_brute(2, std::int64_t{r} * r)) << r;
    const double h = r + 0.5;  // h^2 = r^2 + r + 1/4 is exact
    EXPECT_EQ(ball_count(2, h).count, oracle::lattice_le_brute(2, std::int64_t{r} * r + r)) << h;
  }
}

TEST(BallCount, MatchesEnumeration3D) {
  for (int r = 0; r <= 20; ++r) {
    EXPECT_EQ(ball_count(3, r).count, oracle::lattice_le_brute(3, std::int64_t{r} * r)) << r;
    const double h = r + 0.25;  // h^2 = r^2 + r/2 + 1/16
    EXPECT_EQ(ball_count(3, h).count, oracle::lattice_le_brute(3, std::int64_t{r} * r + r / 2)) << h;
  }
}

TEST(BallCount, MonotoneAndSymmetric) {
  oracle::Gen gen(5);
  std::uint64_t prev = 0;
  double R = 0.0;
  for (int i = 0; i < 200; ++i) {
    R += gen.real(0.0, 3.0);
    const auto c = ball_count(2, R).count;
    EXPECT_GE(c, prev);
    EXPECT_EQ(c % 4, 1u);  // origin plus orbits of the rotation by 90 degrees
    prev = c;
  }
}

TEST(ShellCount, Examples) {
  EXPECT_EQ(shell_count(2, 5.0, 0.0), 12u);
  EXPECT_EQ(shell_count_open(2, 5.0, 0.0), 0u);
  EXPECT_EQ(shell_count(3, 1.0, 0.0), 6u);
}

TEST(ShellCount, Additivity) {
  for (int r = 1; r <= 40; ++r) {
    const std::int64_t K = std::int64_t{r} * r;
    const std::uint64_t on_circle = oracle::lattice_le_brute(2, K) - oracle::lattice_le_brute(2, K - 1);
    for (double w : {0.0, 0.5, 1.25, 3.0}) {
      const auto closed = shell_count(2, r, w);
      const auto diff = shell_count_open(2, r, w);
      EXPECT_EQ(closed, diff + on_circle) << r << " " << w;
      EXPECT_EQ(diff, ball_count(2, r + w).count - ball_count(2, r).count);
    }
  }
}

TEST(ShellCount, SplitAdditivity) {
  // dyadic widths keep R + w1 + w2 exact
  for (double R : {1.0, 3.5, 10.0, 24.25}) {
    for (double w1 : {0.25, 1.0, 2.5}) {
      for (double w2 : {0.0, 0.5, 1.75}) {
        EXPECT_EQ(shell_count(2, R, w1 + w2), shell_count(2, R, w1) + shell_count_open(2, R + w1, w2));
        EXPECT_EQ(shell_count(3, R, w1 + w2), shell_count(3, R, w1) + shell_count_open(3, R + w1, w2));
      }
    }
  }
}

TEST(ShellCount, Errors) {
  EXPECT_THROW(shell_count(2, 0.0, 1.0), ParameterError);
  EXPECT_THROW(shell_count(2, 1.0, -1.0), ParameterError);
  EXPECT_THROW(ball_count(4, 1.0), ParameterError);
  EXPECT_THROW(ball_count(2, -1.0), ParameterError);
  EXPECT_THROW(ball_count(2, 1e300), CapacityError);
}

TEST(LatticeIncidence, Examples) {
  const auto r = lattice_incidence_total(2, 10000, 1.48);
  EXPECT_DOUBLE_EQ(r.R, 10.0);
  EXPECT_NEAR(r.w, 100.0 * std::pow(1e4, -1.0 / 1.48), 1e-12);
  EXPECT_EQ(r.a, 28u);
  EXPECT_EQ(r.I, 280000u);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(lattice_incidence_total(2, 10000, 1.4).valid);

  const auto c = lattice_incidence_total(3, 8000, 1.9);
  EXPECT_DOUBLE_EQ(c.R, 2.0);
  EXPECT_TRUE(c.valid);
  EXPECT_EQ(c.I, 8000u * c.a);
  EXPECT_EQ(c.a, shell_count(3, c.R, c.w));
  EXPECT_FALSE(lattice_incidence_total(3, 8000, 1.7).valid);
}

TEST(LatticeIncidence, Thresholds) {
  EXPECT_DOUBLE_EQ(validity_threshold(2), 416.0 / 285.0);
  EXPECT_DOUBLE_EQ(validity_threshold(3), 16.0 / 9.0);
}

TEST(LatticeIncidence, GrowsWithN) {
  std::uint64_t prev = 0;
  for (std::uint64_t k : {100, 200, 400, 800}) {
    const auto r = lattice_incidence_total(2, k * k, 1.48);
    EXPECT_GT(r.I, prev);
    prev = r.I;
  }
}

TEST(LatticeIncidence, Errors) {
  EXPECT_THROW(lattice_incidence_total(2, 10001, 1.48), ParameterError);
  EXPECT_THROW(lattice_incidence_total(2, 10000, 1.0), ParameterError);
  EXPECT_THROW(lattice_incidence_total(3, 10000, 1.9), ParameterError);
  EXPECT_THROW(lattice_incidence_total(2, 0, 1.48), ParameterError);
}

TEST(Discrepancy, RatioStats) {
  const auto st = discrepancy_ratios(2, 10, 200, 131.0 / 208.0, 18627.0 / 8320.0);
  EXPECT_EQ(st.radii.size(), 191u);
  EXPECT_EQ(st.ratios.size(), 191u);
  EXPECT_GE(st.max, st.median);
  EXPECT_GE(st.argmax, 10);
  EXPECT_LE(st.argmax, 200);
  EXPECT_THROW(discrepancy_ratios(2, 1, 10, 0.5, 0.0), ParameterError);
}

TEST(Discrepancy, MaxAbs) {
  EXPECT_NEAR(max_abs_discrepancy(2, 5, 5), 2.4601836602551685, 1e-12);
  double m = 0.0;
  for (int r = 3; r <= 30; ++r) m = std::max(m, std::abs(ball_count(2, r).discrepancy));
  EXPECT_DOUBLE_EQ(max_abs_discrepancy(2, 3, 30), m);
}
