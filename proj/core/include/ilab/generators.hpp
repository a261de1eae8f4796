#pragma once

#include <cstdint>
#include <vector>

#include "ilab/pointset.hpp"
#include "ilab/wide_int.hpp"

/// Deterministic generators for the extremal configurations: Valtr grids, the
/// two-circle Lenz set, scaled lattices, Cantor-center sets and the discrete
/// Mattila products. All results carry exact rational coordinates.
namespace ilab::pointsets {

/// Points (i_1/n, ..., i_{d-1}/n, i_d/n^2), 0 <= i_j <= n-1, 1 <= i_d <= n^2; n^{d+1} points.
PointSet gen_valtr(std::uint64_t n, std::uint32_t dim);

/// Fixed resolution of the irrational Lenz coordinates: denominator 2^40.
inline constexpr int kLenzResolutionBits = 40;

/// N/2 points on each of two orthogonal unit circles in R^4. N must be even and >= 4.
PointSet gen_lenz(std::uint64_t count);

/// The k^d grid points (i_1/k, ..., i_d/k), 0 <= i_j <= k-1.
PointSet gen_lattice(std::uint64_t k, std::uint32_t dim);

/// Parameters of a two-piece Cantor construction of dimension alpha.
///
/// Every interval keeps two children of relative length lambda = 2^{-1/alpha}
/// anchored at its ends, so the middle 1-2*lambda proportion is removed and the
/// limit set has dimension exactly log 2 / log(1/lambda) = alpha.
struct CantorParams {
  double alpha = 0.5;
  std::uint32_t levels = 0;

  /// Throws ParameterError unless 0 < alpha < 1.
  void validate() const;
  double lambda() const;
  /// m = 1/lambda = 2^{1/alpha}.
  double ratio() const;
};

/// Centers of the 2^levels intervals at the given level, sorted ascending, as
/// numerators over one shared denominator.
///
/// When lambda is (to 1e-13) a fraction p/q with q <= 1000 the centers are exact
/// over 2*q^levels; otherwise they are rounded to a dyadic grid 2^-R fine enough to
/// keep every center distinct (CapacityError once R would exceed 125 bits).
struct CantorCenters {
  Int denominator = 1;
  std::vector<Int> numerators;

  std::size_t size() const noexcept { return numerators.size(); }
  double value(std::size_t i) const;
};

CantorCenters gen_cantor_centers(const CantorParams& params);

/// ceil(m^levels) with m = 2^{1/alpha}; the number of evenly spaced rows in M_2.
std::uint64_t mattila2_rows(double alpha, std::uint32_t levels);

/// (C ∪ (C-1)) x L where C = Cantor centers and L = {(k+1/2)/M : 0 <= k < M}, M = mattila2_rows.
/// Exactly 2 * 2^levels * M points.
PointSet gen_mattila2(double alpha, std::uint32_t levels);

struct Mattila3Exponents {
  double alpha;  ///< 1 - delta, dimension of the two horizontal factors
  double beta;   ///< delta / 2, dimension of the vertical factor
  double s;      ///< 2*alpha + beta = 2 - 3*delta/2
};

/// Throws ParameterError unless 0 < delta < 2/3.
Mattila3Exponents mattila3_exponents(double delta);

/// C_alpha x C_alpha x C_beta with alpha = 1 - delta, beta = delta/2; 8^levels points.
PointSet gen_mattila3(double delta, std::uint32_t levels);

}  // namespace ilab::pointsets
