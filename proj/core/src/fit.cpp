#include <cmath>
#include <string>

#include "ilab/error.hpp"
#include "ilab/harness.hpp"

namespace ilab::harness {

Fit fit_exponent(std::span<const std::pair<double, double>> series) {
  if (series.size() < 3) throw InputError("fit_exponent: need at least 3 points");
  const double n = static_cast<double>(series.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto [N, v] = series[i];
    if (!(N > 0.0) || !std::isfinite(N)) throw InputError("fit_exponent: N must be positive");
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("fit_exponent: value at rung " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && !(N > series[i - 1].first)) throw InputError("fit_exponent: N must be strictly increasing");
    sx += std::log(N);
    sy += std::log(v);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [N, v] : series) {
    const double dx = std::log(N) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  Fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (const auto& [N, v] : series) {
    const double r = std::log(v) - (fit.intercept + fit.slope * std::log(N));
    ssr += r * r;
  }
  fit.stderr_slope = series.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  return fit;
}

std::string_view to_string(VerdictMode m) { return m == VerdictMode::two_sided ? "two_sided" : "upper_bound"; }

VerdictMode parse_verdict_mode(std::string_view name) {
  if (name == "two_sided") return VerdictMode::two_sided;
  if (name == "upper_bound") return VerdictMode::upper_bound;
  throw InputError("unknown verdict mode: " + std::string(name));
}

bool slope_verdict(double slope, double predicted, double tolerance, VerdictMode mode) {
  if (mode == VerdictMode::upper_bound) return slope <= predicted + tolerance;
  return std::abs(slope - predicted) <= tolerance;
}

void finalize(ScalingSeries& series) {
  std::vector<std::pair<double, double>> xy;
  xy.reserve(series.points.size());
  for (const auto& p : series.points) xy.emplace_back(p.N, p.value);
  const auto fit = fit_exponent(xy);
  series.fitted_slope = fit.slope;
  series.slope_stderr = fit.stderr_slope;
  series.pass = slope_verdict(fit.slope, series.predicted, series.tolerance, series.mode);
  if (series.comparison) {
    auto& c = *series.comparison;
    if (c.points.size() != series.points.size()) throw InputError("comparison series has a different ladder");
    std::vector<std::pair<double, double>> rival;
    for (const auto& p : c.points) {
      if (p.value > 0.0) rival.emplace_back(p.N, p.value);
    }
    c.fitted_slope.reset();
    if (rival.size() >= 3) c.fitted_slope = fit_exponent(rival).slope;
    c.top_value = series.points.back().value;
    c.top_rival = c.points.back().value;
    c.holds = (c.top_value > c.top_rival) == c.expected_win;
    if (c.in_window) series.pass = series.pass && c.holds;
  }
}

}  // namespace ilab::harness
