#pragma once

#include <cstdint>
#include <string_view>

#include "ilab/gauge.hpp"
#include "ilab/parallel.hpp"
#include "ilab/pointset.hpp"

namespace ilab::incidence {

enum class Method { exact_integer, grid, brute };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Ordered-pair incidence count plus the parameters that produced it.
struct IncidenceReport {
  std::uint64_t count = 0;
  std::uint64_t n_points = 0;
  gauge::GaugeKind norm = gauge::GaugeKind::paraboloid_body;
  double t = 1.0;
  double eps = 0.0;
  gauge::Caps caps = gauge::Caps::all;
  Method method = Method::exact_integer;
};

/// #{(p, q) in P_n^2 : q - p on dB' within `caps`}, from difference-vector
/// multiplicities prod_j (n - |D_j|) * max(0, n^2 - |D_d|).
/// CapacityError if the count or the enumeration would not fit.
IncidenceReport exact_valtr_incidences(std::uint64_t n, std::uint32_t dim, gauge::Caps caps = gauge::Caps::all);

/// Ordered pairs x != y of P with t <= ||y - x|| <= fl(t + eps).
IncidenceReport annulus_incidences(const PointSet& P, const gauge::Gauge& g, double t, double eps,
                                   Method method = Method::grid, Parallelism par = {});

struct FalconerRecord {
  std::uint64_t n = 0;
  std::uint32_t dim = 2;
  double s = 0.0;
  std::uint64_t N = 0;
  double eps = 0.0;
  std::uint64_t surface_count = 0;  ///< exact Valtr incidences, all caps
  std::uint64_t band_count = 0;     ///< center pairs in the band [1, 1 + eps]
  double measure_lhs = 0.0;         ///< eps^{2s} * surface_count
  double ratio = 0.0;               ///< measure_lhs / eps
  double band_measure = 0.0;        ///< eps^{2s} * band_count
  double band_ratio = 0.0;          ///< band_measure / eps
};

/// Measure ratio of the thickened Valtr configuration with eps = N^{-1/s}.
/// ParameterError unless dim/2 <= s < (dim+1)/2.
FalconerRecord falconer_measure_ratio(std::uint64_t n, std::uint32_t dim, double s, Parallelism par = {});

}  // namespace ilab::incidence
