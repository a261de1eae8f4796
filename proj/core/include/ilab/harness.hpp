#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ilab/parallel.hpp"

/// Scaling experiments: ladders, log-log fits and verdicts against predicted exponents.
namespace ilab::harness {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

/// OLS of log(value) on log(N). InputError unless >= 3 entries, N strictly
/// increasing and positive, values positive.
Fit fit_exponent(std::span<const std::pair<double, double>> series);

struct SeriesPoint {
  double N = 0.0;
  double value = 0.0;
  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

enum class VerdictMode {
  two_sided,    ///< |slope - predicted| <= tolerance
  upper_bound,  ///< slope <= predicted + tolerance
};

std::string_view to_string(VerdictMode m);
VerdictMode parse_verdict_mode(std::string_view name);

/// Measured head-to-head against a second series at the largest common rung.
struct Comparison {
  std::string label;               ///< name of the competing series
  std::vector<SeriesPoint> points;  ///< competitor values, same rung order
  std::optional<double> fitted_slope;  ///< absent when fewer than 3 rival rungs are positive
  double top_value = 0.0;    ///< primary value at the top rung
  double top_rival = 0.0;    ///< competitor value at the top rung
  bool expected_win = true;  ///< prediction: primary exceeds competitor
  bool in_window = true;     ///< s inside the validity window of the prediction
  bool holds = false;        ///< measured direction matches the prediction
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct ScalingSeries {
  std::string experiment;
  std::map<std::string, double> params;
  std::vector<SeriesPoint> points;
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  double predicted = 0.0;
  double tolerance = 0.12;
  VerdictMode mode = VerdictMode::two_sided;
  bool pass = false;
  std::optional<Comparison> comparison;
  std::map<std::string, std::vector<double>> extras;  ///< informational per-rung columns
  friend bool operator==(const ScalingSeries&, const ScalingSeries&) = default;
};

/// Verdict of the fitted slope under the series' mode and tolerance.
bool slope_verdict(double slope, double predicted, double tolerance, VerdictMode mode);

/// Fits `points` and sets fitted_slope, slope_stderr and pass (including the comparison, if any).
void finalize(ScalingSeries& series);

struct ExperimentSpec {
  std::string id;
  std::map<std::string, double> params;  ///< d, s, alpha, delta, dim ...; missing ones take defaults
  std::vector<std::uint64_t> ladder;     ///< rung parameters (n, N, levels, R or q); empty = default
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  Parallelism par;
};

/// Registered ids: valtr-incidence, falconer-ratio, lenz-energy, valtr-energy,
/// mattila2-incidence, mattila3-incidence, lattice-incidence, gauss-discrepancy, ff-sharpness.
std::vector<std::string> experiment_ids();

/// Runs the ladder. ParameterError for unknown ids or ladders shorter than 3 rungs.
ScalingSeries run_experiment(const ExperimentSpec& spec);

enum class Format { csv, json, gnuplot };

std::string_view to_string(Format f);
/// ParameterError (usage) for empty or unknown names.
Format parse_format(std::string_view name);

/// Serialises a series. csv: "N,value" rows plus "# slope=..." footer; json: one
/// object; gnuplot: "N value" columns after a commented fit header.
std::string emit(const ScalingSeries& series, Format format);

/// Inverse of emit(..., Format::json).
ScalingSeries parse_series_json(std::string_view text);

}  // namespace ilab::harness
