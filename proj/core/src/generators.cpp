#include "ilab/generators.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <optional>

#include "ilab/error.hpp"

namespace ilab::pointsets {

namespace {

// Upper bound on stored coordinates (points * dim) for any generator.
constexpr std::uint64_t kMaxCoordinates = std::uint64_t{1} << 25;

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp, const char* what) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) {
      throw CapacityError(std::string(what) + ": size overflows 64-bit integers");
    }
  }
  return out;
}

void check_storage(std::uint64_t points, std::uint64_t dim, const char* what) {
  std::uint64_t total = 0;
  if (__builtin_mul_overflow(points, dim, &total) || total > kMaxCoordinates) {
    throw CapacityError(std::string(what) + ": " + std::to_string(points) + " points in dimension " +
                        std::to_string(dim) + " exceed the storage cap");
  }
}

struct Fraction {
  std::int64_t p;
  std::int64_t q;
};

// lambda as a small fraction, when it is one to double precision
std::optional<Fraction> snap_ratio(double lambda) {
  for (std::int64_t q = 1; q <= 1000; ++q) {
    const double p = std::round(lambda * static_cast<double>(q));
    if (p < 1) continue;
    if (std::abs(lambda - p / static_cast<double>(q)) <= 1e-13) {
      return Fraction{static_cast<std::int64_t>(p), q};
    }
  }
  return std::nullopt;
}

using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;

Int float_to_int(const Float& value) {
  // value is a nonnegative integer below 2^126
  const Float two64 = boost::multiprecision::ldexp(Float(1), 64);
  const Float hi = boost::multiprecision::floor(value / two64);
  const Float lo = value - hi * two64;
  const auto hi_u = hi.convert_to<unsigned long long>();
  const auto lo_u = lo.convert_to<unsigned long long>();
  return (static_cast<Int>(hi_u) << 64) + static_cast<Int>(lo_u);
}

CantorCenters exact_centers(Fraction lam, std::uint32_t levels) {
  Int scale = 1;
  for (std::uint32_t i = 0; i < levels; ++i) {
    if (!checked_mul(scale, lam.q, scale) || scale > (Int{1} << 124)) {
      throw CapacityError("Cantor centers: denominator 2*q^levels exceeds 125 bits");
    }
  }
  std::vector<Int> starts{0};
  Int length = scale;
  for (std::uint32_t level = 0; level < levels; ++level) {
    const Int child = length / lam.q * lam.p;
    std::vector<Int> next;
    next.reserve(starts.size() * 2);
    for (Int s : starts) {
      next.push_back(s);
      next.push_back(s + length - child);
    }
    starts = std::move(next);
    length = child;
  }
  CantorCenters out;
  out.denominator = 2 * scale;
  out.numerators.reserve(starts.size());
  for (Int s : starts) out.numerators.push_back(2 * s + length);
  return out;
}

CantorCenters dyadic_centers(double lam, std::uint32_t levels) {
  if (levels == 0) return CantorCenters{2, {1}};
  // closest pair of centers: siblings at the last level, lambda^{levels-1} (1 - lambda) apart
  const long double spacing =
      std::pow(static_cast<long double>(lam), static_cast<long double>(levels - 1)) * (1.0L - lam);
  const int bits = std::max(60, static_cast<int>(std::ceil(-std::log2(spacing))) + 4);
  if (bits > 125) {
    throw CapacityError("Cantor centers: level " + std::to_string(levels) +
                        " needs more than 125 bits of resolution for lambda=" + std::to_string(lam));
  }
  const Float lambda_f(lam);
  std::vector<Float> starts{Float(0)};
  Float length(1);
  for (std::uint32_t level = 0; level < levels; ++level) {
    const Float child = length * lambda_f;
    std::vector<Float> next;
    next.reserve(starts.size() * 2);
    for (const auto& s : starts) {
      next.push_back(s);
      next.push_back(s + length - child);
    }
    starts = std::move(next);
    length = child;
  }
  const Float scale = boost::multiprecision::ldexp(Float(1), bits);
  CantorCenters out;
  out.denominator = Int{1} << bits;
  out.numerators.reserve(starts.size());
  for (const auto& s : starts) {
    out.numerators.push_back(float_to_int(boost::multiprecision::round((s + length / 2) * scale)));
  }
  return out;
}

}  // namespace

PointSet gen_valtr(std::uint64_t n, std::uint32_t dim) {
  if (n < 1) throw ParameterError("gen_valtr: n must be >= 1");
  if (dim < 2) throw ParameterError("gen_valtr: d must be >= 2");
  const std::uint64_t count = checked_power(n, dim + 1, "gen_valtr");
  check_storage(count, dim, "gen_valtr");
  const std::uint64_t rows = n * n;

  std::vector<Int> dens(dim, static_cast<Int>(n));
  dens[dim - 1] = static_cast<Int>(rows);
  std::vector<Int> nums;
  nums.reserve(count * dim);
  std::vector<std::uint64_t> index(dim - 1, 0);
  const std::uint64_t columns = count / rows;
  for (std::uint64_t c = 0; c < columns; ++c) {
    // mixed-radix decode, first axis slowest
    std::uint64_t rest = c;
    for (std::uint32_t a = dim - 1; a-- > 0;) {
      index[a] = rest % n;
      rest /= n;
    }
    for (std::uint64_t last = 1; last <= rows; ++last) {
      for (auto i : index) nums.push_back(static_cast<Int>(i));
      nums.push_back(static_cast<Int>(last));
    }
  }
  return PointSet(dim, std::move(dens), std::move(nums), Provenance::valtr);
}

PointSet gen_lenz(std::uint64_t count) {
  if (count < 4 || count % 2 != 0) throw ParameterError("gen_lenz: N must be even and >= 4");
  const std::uint64_t half = count / 2;
  if (half > (std::uint64_t{1} << 20)) throw CapacityError("gen_lenz: N exceeds the 2^-40 coordinate resolution");
  const Int den = Int{1} << kLenzResolutionBits;
  const long double scale = std::ldexp(1.0L, kLenzResolutionBits);
  std::vector<Int> cs;
  std::vector<Int> sn;
  for (std::uint64_t k = 0; k < half; ++k) {
    const long double theta =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(half);
    cs.push_back(static_cast<Int>(std::llround(std::cos(theta) * scale)));
    sn.push_back(static_cast<Int>(std::llround(std::sin(theta) * scale)));
  }
  std::vector<Int> nums;
  nums.reserve(count * 4);
  for (std::uint64_t k = 0; k < half; ++k) {
    nums.insert(nums.end(), {cs[k], sn[k], 0, 0});
  }
  for (std::uint64_t k = 0; k < half; ++k) {
    nums.insert(nums.end(), {0, 0, cs[k], sn[k]});
  }
  return PointSet(4, std::vector<Int>(4, den), std::move(nums), Provenance::lenz);
}

PointSet gen_lattice(std::uint64_t k, std::uint32_t dim) {
  if (k < 1) throw ParameterError("gen_lattice: k must be >= 1");
  if (dim < 1) throw ParameterError("gen_lattice: dimension must be >= 1");
  const std::uint64_t count = checked_power(k, dim, "gen_lattice");
  check_storage(count, dim, "gen_lattice");
  std::vector<Int> nums;
  nums.reserve(count * dim);
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t rest = c;
    const auto base = nums.size();
    nums.resize(base + dim);
    for (std::uint32_t a = dim; a-- > 0;) {
      nums[base + a] = static_cast<Int>(rest % k);
      rest /= k;
    }
  }
  return PointSet(dim, std::vector<Int>(dim, static_cast<Int>(k)), std::move(nums), Provenance::lattice);
}

void CantorParams::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw ParameterError("Cantor alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  if (levels > 26) throw CapacityError("Cantor levels above 26 exceed the storage cap");
}

double CantorParams::lambda() const { return std::exp2(-1.0 / alpha); }

double CantorParams::ratio() const { return std::exp2(1.0 / alpha); }

double CantorCenters::value(std::size_t i) const {
  return static_cast<double>(to_long_double(numerators[i]) / to_long_double(denominator));
}

CantorCenters gen_cantor_centers(const CantorParams& params) {
  params.validate();
  const double lam = params.lambda();
  if (auto frac = snap_ratio(lam)) return exact_centers(*frac, params.levels);
  return dyadic_centers(lam, params.levels);
}

std::uint64_t mattila2_rows(double alpha, std::uint32_t levels) {
  const CantorParams params{alpha, levels};
  params.validate();
  if (auto frac = snap_ratio(params.lambda())) {
    Int num = 1;
    Int den = 1;
    bool fits = true;
    for (std::uint32_t i = 0; i < levels && fits; ++i) {
      fits = checked_mul(num, frac->q, num) && checked_mul(den, frac->p, den);
    }
    if (fits) {
      const Int rows = (num + den - 1) / den;
      if (rows > static_cast<Int>(kMaxCoordinates)) throw CapacityError("mattila2: too many rows");
      return static_cast<std::uint64_t>(rows);
    }
  }
  const long double x = std::pow(static_cast<long double>(params.ratio()), static_cast<long double>(levels));
  if (!(x < static_cast<long double>(kMaxCoordinates))) throw CapacityError("mattila2: too many rows");
  const long double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9L * x) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

PointSet gen_mattila2(double alpha, std::uint32_t levels) {
  const auto centers = gen_cantor_centers(CantorParams{alpha, levels});
  const std::uint64_t rows = mattila2_rows(alpha, levels);
  const std::uint64_t columns = 2 * centers.size();
  std::uint64_t count = 0;
  if (__builtin_mul_overflow(columns, rows, &count)) throw CapacityError("gen_mattila2: size overflow");
  check_storage(count, 2, "gen_mattila2");

  std::vector<Int> xs;
  xs.reserve(columns);
  for (Int c : centers.numerators) xs.push_back(c - centers.denominator);
  for (Int c : centers.numerators) xs.push_back(c);

  std::vector<Int> nums;
  nums.reserve(count * 2);
  for (Int x : xs) {
    for (std::uint64_t k = 0; k < rows; ++k) {
      nums.push_back(x);
      nums.push_back(static_cast<Int>(2 * k + 1));
    }
  }
  return PointSet(2, {centers.denominator, static_cast<Int>(2 * rows)}, std::move(nums), Provenance::mattila2);
}

Mattila3Exponents mattila3_exponents(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 2.0 / 3.0) {
    throw ParameterError("mattila3: delta must lie in (0, 2/3), got " + std::to_string(delta));
  }
  const double alpha = 1.0 - delta;
  const double beta = delta / 2.0;
  return {alpha, beta, 2.0 * alpha + beta};
}

PointSet gen_mattila3(double delta, std::uint32_t levels) {
  const auto exps = mattila3_exponents(delta);
  const auto horizontal = gen_cantor_centers(CantorParams{exps.alpha, levels});
  const auto vertical = gen_cantor_centers(CantorParams{exps.beta, levels});
  const std::uint64_t count = horizontal.size() * horizontal.size() * vertical.size();
  check_storage(count, 3, "gen_mattila3");
  std::vector<Int> nums;
  nums.reserve(count * 3);
  for (Int x : horizontal.numerators) {
    for (Int y : horizontal.numerators) {
      for (Int z : vertical.numerators) nums.insert(nums.end(), {x, y, z});
    }
  }
  return PointSet(3, {horizontal.denominator, horizontal.denominator, vertical.denominator}, std::move(nums),
                  Provenance::mattila3);
}

}  // namespace ilab::pointsets
