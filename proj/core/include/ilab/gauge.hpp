#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ilab/wide_int.hpp"

/// Norm evaluators: the Euclidean norm and the Minkowski functional of the
/// glued-paraboloid body
///
///   B' = { |x'| <= 1, -(1 - |x'|^2) <= x_d <= 1 - |x'|^2 },  x' = (x_1..x_{d-1}).
///
/// The ridge |x'| = 1, x_d = 0 is left unsmoothed.
namespace ilab::gauge {

enum class GaugeKind { euclidean, paraboloid_body };

std::string_view to_string(GaugeKind kind);
GaugeKind parse_gauge_kind(std::string_view name);

class Gauge {
 public:
  Gauge(GaugeKind kind, std::size_t dim);

  GaugeKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }

  /// inf{t > 0 : x/t in B}. Throws InputError for non-finite input or a dimension mismatch.
  double value(std::span<const double> x) const;

  /// Sign of value(x) - threshold (threshold > 0) for x = num[a]/den[a], with the
  /// double threshold read as the exact binary fraction it stores. No rounding.
  int compare_exact(std::span<const Int> num, std::span<const Int> den, double threshold) const;

  /// Same sign as compare_exact, using a floating filter when the decision is
  /// clear and the exact path otherwise. `approx` must be the coordinates of the
  /// exact vector rounded with absolute error below 1e-15 per axis.
  int compare(std::span<const double> approx, std::span<const Int> num, std::span<const Int> den,
              double threshold) const;

  /// Euclidean bracket: |x| <= value(x) <= euclid_ratio_max() * |x|.
  /// B' sits inside the unit ball and contains the ball of radius sqrt(3)/2.
  double euclid_ratio_max() const noexcept;

 private:
  GaugeKind kind_;
  std::size_t dim_;
};

/// Free-function form of Gauge::value.
inline double gauge_value(const Gauge& g, std::span<const double> x) { return g.value(x); }

/// Where an index-difference vector of two Valtr points sits relative to dB'.
enum class SurfaceClass { not_on, upper, lower, ridge };

std::string_view to_string(SurfaceClass c);

/// Bit set of caps of dB' that count as incidences.
enum class Caps : std::uint8_t { none = 0, upper = 1, lower = 2, ridge = 4, all = 7 };

constexpr Caps operator|(Caps a, Caps b) {
  return static_cast<Caps>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
constexpr bool contains(Caps set, SurfaceClass c) {
  const auto bits = static_cast<std::uint8_t>(set);
  switch (c) {
    case SurfaceClass::upper: return bits & 1;
    case SurfaceClass::lower: return bits & 2;
    case SurfaceClass::ridge: return bits & 4;
    case SurfaceClass::not_on: return false;
  }
  return false;
}
std::string to_string(Caps caps);
/// Parses "upper,lower,ridge" (any subset, or "all").
Caps parse_caps(std::string_view text);

/// Classifies the difference (Δ_1/n, ..., Δ_{d-1}/n, Δ_d/n^2) of two Valtr points
/// against dB' in pure integer arithmetic:
///   upper  iff Δ_d > 0 and Δ_d = n^2 - ΣΔ_j^2,
///   lower  iff Δ_d < 0 and Δ_d = ΣΔ_j^2 - n^2,
///   ridge  iff Δ_d = 0 and ΣΔ_j^2 = n^2.
SurfaceClass on_surface_exact(std::uint64_t n, std::uint32_t dim, std::span<const std::int64_t> diff);

}  // namespace ilab::gauge
