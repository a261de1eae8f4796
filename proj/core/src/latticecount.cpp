#include "ilab/latticecount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ilab/error.hpp"

namespace ilab::lattice {

namespace {

using u128 = unsigned __int128;

struct ExactSquare {
  std::uint64_t floor = 0;
  bool integral = true;
};

void check_dim(std::uint32_t dim) {
  if (dim != 2 && dim != 3) throw ParameterError("lattice counts support dim 2 or 3");
}

// floor(R^2) for the exact binary value of R, and whether R^2 is an integer
ExactSquare exact_square(std::uint32_t dim, double R) {
  if (!std::isfinite(R) || R < 0.0) throw ParameterError("lattice radius must be finite and >= 0");
  const double cap = dim == 2 ? 2147483648.0 : 1048576.0;
  if (R > cap) throw CapacityError("lattice radius too large for 64-bit counts");
  if (R == 0.0) return {};
  int e = 0;
  const double m = std::frexp(R, &e);
  const auto M = static_cast<std::uint64_t>(std::ldexp(m, 53));
  const int shift = -2 * (e - 53);
  const u128 sq = static_cast<u128>(M) * M;
  if (shift <= 0) return {static_cast<std::uint64_t>(sq << -shift), true};
  if (shift >= 128) return {0, false};
  const u128 mask = (static_cast<u128>(1) << shift) - 1;
  return {static_cast<std::uint64_t>(sq >> shift), (sq & mask) == 0};
}

std::uint64_t isqrt(std::uint64_t k) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while (static_cast<u128>(r) * r > k) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= k) ++r;
  return r;
}

std::uint64_t disk_le(std::uint64_t K) {
  const std::uint64_t r = isqrt(K);
  std::uint64_t total = 2 * r + 1;
  for (std::uint64_t x = 1; x <= r; ++x) total += 2 * (2 * isqrt(K - x * x) + 1);
  return total;
}

// #{z in Z^dim : |z|^2 <= K}
std::uint64_t count_le(std::uint32_t dim, std::uint64_t K) {
  if (dim == 2) return disk_le(K);
  const std::uint64_t r = isqrt(K);
  std::uint64_t total = disk_le(K);
  for (std::uint64_t x = 1; x <= r; ++x) total += 2 * disk_le(K - x * x);
  return total;
}

std::uint64_t count_lt(std::uint32_t dim, const ExactSquare& sq) {
  if (sq.integral) return sq.floor == 0 ? 0 : count_le(dim, sq.floor - 1);
  return count_le(dim, sq.floor);
}

double volume(std::uint32_t dim, double R) {
  return dim == 2 ? std::numbers::pi * R * R : 4.0 / 3.0 * std::numbers::pi * R * R * R;
}

}  // namespace

LatticeCountReport ball_count(std::uint32_t dim, double R) {
  check_dim(dim);
  LatticeCountReport rep;
  rep.dim = dim;
  rep.R = R;
  rep.count = count_le(dim, exact_square(dim, R).floor);
  rep.volume_term = volume(dim, R);
  rep.discrepancy = static_cast<double>(rep.count) - rep.volume_term;
  return rep;
}

std::uint64_t shell_count(std::uint32_t dim, double R, double w) {
  check_dim(dim);
  if (!(R > 0.0)) throw ParameterError("shell_count: R must be positive");
  if (!(w >= 0.0)) throw ParameterError("shell_count: w must be >= 0");
  const auto inner = exact_square(dim, R);
  const auto outer = exact_square(dim, R + w);
  return count_le(dim, outer.floor) - count_lt(dim, inner);
}

std::uint64_t shell_count_open(std::uint32_t dim, double R, double w) {
  check_dim(dim);
  if (!(R > 0.0)) throw ParameterError("shell_count: R must be positive");
  if (!(w >= 0.0)) throw ParameterError("shell_count: w must be >= 0");
  return count_le(dim, exact_square(dim, R + w).floor) - count_le(dim, exact_square(dim, R).floor);
}

double validity_threshold(std::uint32_t dim) {
  check_dim(dim);
  return dim == 2 ? 416.0 / 285.0 : 16.0 / 9.0;
}

LatticeIncidence lattice_incidence_total(std::uint32_t dim, std::uint64_t N, double s) {
  check_dim(dim);
  if (N == 0) throw ParameterError("lattice_incidence_total: N must be positive");
  if (!(s > 0.5 * dim) || !std::isfinite(s)) throw ParameterError("lattice_incidence_total: need s > dim/2");
  auto k = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(N), 1.0 / dim)));
  auto power = [dim](std::uint64_t v) {
    u128 p = 1;
    for (std::uint32_t a = 0; a < dim; ++a) p *= v;
    return p;
  };
  while (k > 0 && power(k) > N) --k;
  while (power(k + 1) <= N) ++k;
  if (power(k) != N) throw ParameterError("lattice_incidence_total: N must be a perfect dim-th power");

  LatticeIncidence rec;
  rec.dim = dim;
  rec.N = N;
  rec.s = s;
  const double side = static_cast<double>(k);  // points become 1-separated
  rec.R = side / 10.0;
  rec.w = side * std::pow(static_cast<double>(N), -1.0 / s);
  rec.a = shell_count(dim, rec.R, rec.w);
  rec.a_open = shell_count_open(dim, rec.R, rec.w);
  const u128 I = static_cast<u128>(N) * rec.a;
  if (I > std::numeric_limits<std::uint64_t>::max()) throw CapacityError("lattice incidence total overflows");
  rec.I = static_cast<std::uint64_t>(I);
  rec.valid = s > validity_threshold(dim);
  return rec;
}

RatioStats discrepancy_ratios(std::uint32_t dim, std::int64_t r_min, std::int64_t r_max, double power,
                              double log_power, double limit_factor) {
  check_dim(dim);
  if (r_min < 2 || r_max < r_min) throw ParameterError("discrepancy_ratios: need 2 <= r_min <= r_max");
  RatioStats st;
  for (std::int64_t R = r_min; R <= r_max; ++R) {
    const double r = static_cast<double>(R);
    const auto rep = ball_count(dim, r);
    const double norm = std::pow(r, power) * std::pow(std::log(r), log_power);
    const double ratio = std::abs(rep.discrepancy) / norm;
    st.radii.push_back(R);
    st.ratios.push_back(ratio);
    if (ratio > st.max) {
      st.max = ratio;
      st.argmax = R;
    }
  }
  std::vector<double> sorted = st.ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  st.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  for (double v : st.ratios) {
    if (v > limit_factor * st.median) ++st.above_limit;
  }
  return st;
}

double max_abs_discrepancy(std::uint32_t dim, std::int64_t lo, std::int64_t hi) {
  check_dim(dim);
  if (lo < 0 || hi < lo) throw ParameterError("max_abs_discrepancy: need 0 <= lo <= hi");
  double best = 0.0;
  for (std::int64_t R = lo; R <= hi; ++R) {
    best = std::max(best, std::abs(ball_count(dim, static_cast<double>(R)).discrepancy));
  }
  return best;
}

}  // namespace ilab::lattice
