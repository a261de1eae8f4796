#include "ilab/gauge.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "ilab/error.hpp"

namespace ilab::gauge {

namespace mp = boost::multiprecision;

std::string_view to_string(GaugeKind kind) {
  return kind == GaugeKind::euclidean ? "euclidean" : "paraboloid";
}

GaugeKind parse_gauge_kind(std::string_view name) {
  if (name == "euclidean") return GaugeKind::euclidean;
  if (name == "paraboloid" || name == "paraboloid_body") return GaugeKind::paraboloid_body;
  throw ParameterError("unknown gauge kind: " + std::string(name));
}

Gauge::Gauge(GaugeKind kind, std::size_t dim) : kind_(kind), dim_(dim) {
  if (dim_ == 0) throw ParameterError("gauge dimension must be positive");
  if (kind_ == GaugeKind::paraboloid_body && dim_ < 2) {
    throw ParameterError("the paraboloid body needs dimension >= 2");
  }
}

double Gauge::euclid_ratio_max() const noexcept {
  return kind_ == GaugeKind::euclidean ? 1.0 : 2.0 / std::sqrt(3.0);
}

double Gauge::value(std::span<const double> x) const {
  if (x.size() != dim_) throw InputError("gauge_value: dimension mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw InputError("gauge_value: non-finite coordinate");
  }
  if (kind_ == GaugeKind::euclidean) {
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return std::sqrt(sum);
  }
  double horizontal = 0.0;
  for (std::size_t a = 0; a + 1 < dim_; ++a) horizontal += x[a] * x[a];
  const double vertical = std::abs(x[dim_ - 1]);
  // positive root of t^2 - |x_d| t - |x'|^2 = 0
  return 0.5 * (vertical + std::sqrt(vertical * vertical + 4.0 * horizontal));
}

namespace {

// phi(tau) = tau^2 - |x_d| tau - |x'|^2 (paraboloid) or tau^2 - |x|^2 (euclidean).
// For tau > 0, sign(value(x) - tau) = -sign(phi(tau)).
template <typename T, typename Coord>
T phi(GaugeKind kind, std::size_t dim, Coord coord, const T& tau) {
  T result = tau * tau;
  const std::size_t planar = kind == GaugeKind::euclidean ? dim : dim - 1;
  for (std::size_t a = 0; a < planar; ++a) {
    const T c = coord(a);
    result -= c * c;
  }
  if (kind == GaugeKind::paraboloid_body) {
    T last = coord(dim - 1);
    if (last < 0) last = -last;
    result -= last * tau;
  }
  return result;
}

int sign_of(const mp::cpp_rational& v) { return v.sign(); }

mp::cpp_int to_big(Int v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mp::cpp_int out = static_cast<unsigned long long>(mag >> 64);
  out <<= 64;
  out += static_cast<unsigned long long>(mag & ~std::uint64_t{0});
  return negative ? mp::cpp_int(-out) : out;
}

}  // namespace

int Gauge::compare_exact(std::span<const Int> num, std::span<const Int> den, double threshold) const {
  if (num.size() != dim_ || den.size() != dim_) throw InputError("compare_exact: dimension mismatch");
  if (!(threshold > 0.0) || !std::isfinite(threshold)) throw ParameterError("gauge threshold must be positive");
  const mp::cpp_rational tau(threshold);
  auto coord = [&](std::size_t a) { return mp::cpp_rational(to_big(num[a]), to_big(den[a])); };
  return -sign_of(phi<mp::cpp_rational>(kind_, dim_, coord, tau));
}

int Gauge::compare(std::span<const double> approx, std::span<const Int> num, std::span<const Int> den,
                   double threshold) const {
  auto coord = [&](std::size_t a) { return approx[a]; };
  const double f = phi<double>(kind_, dim_, coord, threshold);
  // coordinates lie in [-2,2] and carry < 1e-15 absolute error; this bound covers
  // both that and the rounding of phi itself with a wide margin
  const double slack = 4e-14 * (1.0 + threshold) * (1.0 + threshold) * static_cast<double>(dim_);
  if (f > slack) return -1;
  if (f < -slack) return 1;
  return compare_exact(num, den, threshold);
}

std::string_view to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::upper: return "upper";
    case SurfaceClass::lower: return "lower";
    case SurfaceClass::ridge: return "ridge";
    case SurfaceClass::not_on: return "not_on";
  }
  return "not_on";
}

std::string to_string(Caps caps) {
  std::string out;
  for (auto c : {SurfaceClass::upper, SurfaceClass::lower, SurfaceClass::ridge}) {
    if (!contains(caps, c)) continue;
    if (!out.empty()) out += ',';
    out += to_string(c);
  }
  return out.empty() ? "none" : out;
}

Caps parse_caps(std::string_view text) {
  if (text == "all") return Caps::all;
  if (text == "none" || text.empty()) return Caps::none;
  Caps caps = Caps::none;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item == "upper") {
      caps = caps | Caps::upper;
    } else if (item == "lower") {
      caps = caps | Caps::lower;
    } else if (item == "ridge") {
      caps = caps | Caps::ridge;
    } else {
      throw ParameterError("unknown cap: " + std::string(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return caps;
}

SurfaceClass on_surface_exact(std::uint64_t n, std::uint32_t dim, std::span<const std::int64_t> diff) {
  if (diff.size() != dim || dim < 2) throw ParameterError("on_surface_exact: need d index differences, d >= 2");
  const Int n2 = static_cast<Int>(n) * static_cast<Int>(n);
  Int planar = 0;
  for (std::uint32_t a = 0; a + 1 < dim; ++a) planar += static_cast<Int>(diff[a]) * diff[a];
  const Int last = diff[dim - 1];
  if (last > 0 && last == n2 - planar) return SurfaceClass::upper;
  if (last < 0 && last == planar - n2) return SurfaceClass::lower;
  if (last == 0 && planar == n2) return SurfaceClass::ridge;
  return SurfaceClass::not_on;
}

}  // namespace ilab::gauge
