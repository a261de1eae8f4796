#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilab/wide_int.hpp"

namespace ilab {

enum class Provenance { valtr, lenz, lattice, mattila2, mattila3, cantor, custom };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view name);

/// A finite set of points in [-1,1]^d with exact rational coordinates.
///
/// Coordinate `a` of every point is numerator / denominator(a); the denominator is
/// shared along an axis so that differences of points stay integral over it.
/// A double copy of every coordinate is kept for the floating kernels; it is the
/// correctly rounded value up to a relative error of 2^-52.
///
/// Construction validates all invariants (positive denominators, coordinates in
/// [-1,1], no duplicate points) and throws InputError otherwise. Instances are
/// immutable.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<Int> denominators, std::vector<Int> numerators,
           Provenance label = Provenance::custom);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : numerators_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }
  Provenance label() const noexcept { return label_; }

  Int denominator(std::size_t axis) const { return denominators_[axis]; }
  std::span<const Int> denominators() const noexcept { return denominators_; }

  Int numerator(std::size_t point, std::size_t axis) const { return numerators_[point * dim_ + axis]; }
  std::span<const Int> numerators(std::size_t point) const {
    return {numerators_.data() + point * dim_, dim_};
  }

  double coord(std::size_t point, std::size_t axis) const { return coords_[point * dim_ + axis]; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  /// Row-major view of all coordinates.
  std::span<const double> coords() const noexcept { return coords_; }

  /// Exact rational text "num/den" of one coordinate.
  std::string coord_text(std::size_t point, std::size_t axis) const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.label_ == b.label_ && a.denominators_ == b.denominators_ &&
           a.numerators_ == b.numerators_;
  }

 private:
  std::size_t dim_;
  std::vector<Int> denominators_;
  std::vector<Int> numerators_;
  std::vector<double> coords_;
  Provenance label_;
};

}  // namespace ilab
