#include "ilab/band.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "ilab/error.hpp"

namespace ilab {

namespace {
constexpr std::size_t kInlineDim = 8;
}

BandPredicate::BandPredicate(const gauge::Gauge& g, double t, double eps) : gauge_(g), t_(t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("band radius t must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ParameterError("band thickness eps must be >= 0");
  outer_ = t + eps;
  // coordinates carry <= 1e-15 error per axis and the gauge is 2/sqrt(3)-Lipschitz;
  // anything within the slack goes to the exact path
  const double dim_term = 1e-13 * std::sqrt(static_cast<double>(g.dim()));
  slack_inner_ = dim_term + 1e-13 * t_;
  slack_outer_ = dim_term + 1e-13 * outer_;
}

int BandPredicate::compare_exact(const PointSet& P, std::size_t i, std::size_t j, double threshold) const {
  const std::size_t dim = P.dim();
  std::array<Int, kInlineDim> num_buf{};
  std::vector<Int> num_heap;
  std::span<Int> num;
  if (dim <= kInlineDim) {
    num = std::span<Int>(num_buf.data(), dim);
  } else {
    num_heap.resize(dim);
    num = num_heap;
  }
  const auto a = P.numerators(i);
  const auto b = P.numerators(j);
  for (std::size_t k = 0; k < dim; ++k) num[k] = b[k] - a[k];
  return gauge_.compare_exact(num, P.denominators(), threshold);
}

bool BandPredicate::contains(const PointSet& P, std::size_t i, std::size_t j) const {
  const std::size_t dim = P.dim();
  std::array<double, kInlineDim> diff_buf{};
  std::vector<double> diff_heap;
  std::span<double> diff;
  if (dim <= kInlineDim) {
    diff = std::span<double>(diff_buf.data(), dim);
  } else {
    diff_heap.resize(dim);
    diff = diff_heap;
  }
  const auto x = P.point(i);
  const auto y = P.point(j);
  for (std::size_t k = 0; k < dim; ++k) diff[k] = y[k] - x[k];
  const double v = gauge_.value(diff);

  if (v < t_ - slack_inner_ || v > outer_ + slack_outer_) return false;
  const bool inner_ok = v > t_ + slack_inner_ || compare_exact(P, i, j, t_) >= 0;
  if (!inner_ok) return false;
  return v < outer_ - slack_outer_ || compare_exact(P, i, j, outer_) <= 0;
}

}  // namespace ilab
