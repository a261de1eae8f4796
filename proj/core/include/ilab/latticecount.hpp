#pragma once

#include <cstdint>
#include <vector>

/// Exact lattice-point counts in balls and shells of Z^2 and Z^3.
namespace ilab::lattice {

struct LatticeCountReport {
  std::uint32_t dim = 2;
  double R = 0.0;
  std::uint64_t count = 0;
  double volume_term = 0.0;  ///< pi R^2 or (4/3) pi R^3
  double discrepancy = 0.0;  ///< count - volume_term
};

/// #{z in Z^dim : |z| <= R}, row by row with integer square roots. R is taken as
/// the exact binary value of the double, so the boundary test has no rounding.
LatticeCountReport ball_count(std::uint32_t dim, double R);

/// #{z : R <= |z| <= R + w}, both ends closed; R + w is rounded once in double.
std::uint64_t shell_count(std::uint32_t dim, double R, double w);

/// c(R + w) - c(R): the count-difference form that leaves out |z| = R.
std::uint64_t shell_count_open(std::uint32_t dim, double R, double w);

struct LatticeIncidence {
  std::uint32_t dim = 2;
  std::uint64_t N = 0;
  double s = 0.0;
  double R = 0.0;                ///< shell radius on the integer scale
  double w = 0.0;                ///< shell thickness on the integer scale
  std::uint64_t a = 0;           ///< shell_count(R, w) (b in dimension 3)
  std::uint64_t a_open = 0;     ///< shell_count_open(R, w)
  std::uint64_t I = 0;           ///< N * a
  bool valid = false;            ///< s > 416/285 (dim 2) or s > 16/9 (dim 3)
};

/// Lattice side of the point/annulus comparison for the N-point scaled lattice.
/// dim 2: R = sqrt(N)/10, w = sqrt(N) N^{-1/s}; dim 3: R = N^{1/3}/10, w = N^{1/3-1/s}.
/// N must be a perfect dim-th power and s > dim/2.
LatticeIncidence lattice_incidence_total(std::uint32_t dim, std::uint64_t N, double s);

/// Validity threshold of the discrepancy bounds: 416/285 in dim 2, 16/9 in dim 3.
double validity_threshold(std::uint32_t dim);

struct RatioStats {
  std::vector<std::int64_t> radii;
  std::vector<double> ratios;  ///< |D(R)| / normaliser(R)
  double max = 0.0;
  double median = 0.0;
  std::int64_t argmax = 0;
  std::uint64_t above_limit = 0;  ///< radii whose ratio exceeds limit_factor * median
};

/// |D(R)| / (R^power * (log R)^log_power) over integer R in [r_min, r_max].
RatioStats discrepancy_ratios(std::uint32_t dim, std::int64_t r_min, std::int64_t r_max, double power,
                              double log_power, double limit_factor = 10.0);

/// Largest |D(R')| over integer R' in [lo, hi].
double max_abs_discrepancy(std::uint32_t dim, std::int64_t lo, std::int64_t hi);

}  // namespace ilab::lattice
