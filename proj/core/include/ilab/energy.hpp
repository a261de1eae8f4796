#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ilab/parallel.hpp"
#include "ilab/pointset.hpp"

namespace ilab::energy {

struct EnergyReport {
  double s = 0.0;
  double lambda_s = 0.0;
  std::uint64_t n_points = 0;
  std::optional<double> self_term;             ///< term I: the cube constant C(d,s)
  std::optional<double> cross_term;            ///< term II: eps^{2s} sum_{p != q} |p-q|^{-s}
  std::optional<double> self_term_stderr;      ///< Monte Carlo error of self_term
  std::optional<double> self_term_ball_bound;  ///< |S^{d-1}| d^{(d-s)/2} / (d-s)
};

/// N^{-2} sum_{p != q} |p - q|^{-s} with Euclidean distances and pairwise summation.
/// InputError if two points coincide in floating point.
EnergyReport adaptability_sum(const PointSet& P, double s, Parallelism par = {});

/// One pass over the pairs for several exponents; results in the order of `s`.
std::vector<EnergyReport> adaptability_sums(const PointSet& P, std::span<const double> s, Parallelism par = {});

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// C(d,s) = integral over [0,1]^{2d} of |x - y|^{-s}, by Monte Carlo; deterministic in
/// (d, s, samples, seed) whatever the thread count. Needs 0 <= s < d and samples >= 1e4.
MonteCarloEstimate cube_self_energy(std::uint32_t dim, double s, std::uint64_t samples, std::uint64_t seed,
                                    Parallelism par = {});

/// Upper bound for term I from the ball |X| <= sqrt(d): |S^{d-1}| d^{(d-s)/2} / (d-s).
double ball_self_bound(std::uint32_t dim, double s);

/// Term I + term II for the thickened Valtr set P_n with eps = N^{-1/s}.
/// Needs d/2 <= s < (d+1)/2 and n >= 2.
EnergyReport energy_decomposition(std::uint64_t n, std::uint32_t dim, double s, std::uint64_t samples,
                                  std::uint64_t seed, Parallelism par = {});

/// Pairwise summation of v in index order.
double pairwise_sum(std::span<const double> v);

}  // namespace ilab::energy
