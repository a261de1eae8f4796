#pragma once

#include <span>

#include "ilab/gauge.hpp"
#include "ilab/pointset.hpp"

namespace ilab {

/// Closed band t <= ||y - x|| <= T with T = fl(t + eps), decided exactly.
///
/// Both ends are compared against the exact rational difference of the two
/// points; the double gauge value only serves as a filter, so the grid and brute
/// counters built on top of this agree bit for bit.
class BandPredicate {
 public:
  BandPredicate(const gauge::Gauge& g, double t, double eps);

  double inner() const noexcept { return t_; }
  double outer() const noexcept { return outer_; }

  /// Whether the ordered pair (i, j) of P lies in the band. P must match the gauge dimension.
  bool contains(const PointSet& P, std::size_t i, std::size_t j) const;

 private:
  int compare_exact(const PointSet& P, std::size_t i, std::size_t j, double threshold) const;

  gauge::Gauge gauge_;
  double t_;
  double outer_;
  double slack_inner_;
  double slack_outer_;
};

}  // namespace ilab
