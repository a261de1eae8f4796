#include <fmt/format.h>

#include <nlohmann/json.hpp>
#include <string>

#include "ilab/error.hpp"
#include "ilab/harness.hpp"

namespace ilab::harness {

using nlohmann::json;

std::string_view to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::gnuplot: return "gnuplot";
  }
  return "csv";
}

Format parse_format(std::string_view name) {
  if (name.empty()) throw ParameterError("usage: --format must be one of csv, json, gnuplot");
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "gnuplot") return Format::gnuplot;
  throw ParameterError("usage: unknown format '" + std::string(name) + "' (csv, json, gnuplot)");
}

namespace {

json points_json(const std::vector<SeriesPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({{"N", p.N}, {"value", p.value}});
  return arr;
}

std::vector<SeriesPoint> points_from(const json& arr) {
  std::vector<SeriesPoint> pts;
  for (const auto& p : arr) pts.push_back({p.at("N").get<double>(), p.at("value").get<double>()});
  return pts;
}

std::string fit_line(const ScalingSeries& s) {
  return fmt::format("slope={},stderr={},predicted={},tolerance={},mode={},verdict={}", s.fitted_slope,
                     s.slope_stderr, s.predicted, s.tolerance, to_string(s.mode), s.pass ? "pass" : "fail");
}

std::string comparison_line(const Comparison& c) {
  return fmt::format("comparison={},rival_slope={},top_value={},top_rival={},expected_win={},in_window={},holds={}",
                     c.label, c.fitted_slope ? fmt::format("{}", *c.fitted_slope) : "none", c.top_value, c.top_rival, c.expected_win, c.in_window, c.holds);
}

}  // namespace

std::string emit(const ScalingSeries& s, Format format) {
  std::string out;
  switch (format) {
    case Format::csv: {
      out += "N,value\n";
      for (const auto& p : s.points) out += fmt::format("{},{}\n", p.N, p.value);
      out += fmt::format("# experiment={}\n", s.experiment);
      out += "# " + fit_line(s) + "\n";
      if (s.comparison) out += "# " + comparison_line(*s.comparison) + "\n";
      return out;
    }
    case Format::gnuplot: {
      out += fmt::format("# experiment: {}\n", s.experiment);
      out += "# fit of log(value) against log(N): " + fit_line(s) + "\n";
      if (s.comparison) out += "# " + comparison_line(*s.comparison) + "\n";
      out += "# N value\n";
      for (const auto& p : s.points) out += fmt::format("{} {}\n", p.N, p.value);
      if (s.comparison) {
        out += fmt::format("\n\n# {}: N value\n", s.comparison->label);
        for (const auto& p : s.comparison->points) out += fmt::format("{} {}\n", p.N, p.value);
      }
      return out;
    }
    case Format::json: {
      json j;
      j["experiment"] = s.experiment;
      j["params"] = s.params;
      j["points"] = points_json(s.points);
      j["fitted_slope"] = s.fitted_slope;
      j["slope_stderr"] = s.slope_stderr;
      j["predicted"] = s.predicted;
      j["tolerance"] = s.tolerance;
      j["mode"] = std::string(to_string(s.mode));
      j["verdict"] = s.pass ? "pass" : "fail";
      if (s.comparison) {
        const auto& c = *s.comparison;
        j["comparison"] = {{"label", c.label},          {"points", points_json(c.points)},
                           {"fitted_slope", c.fitted_slope ? json(*c.fitted_slope) : json(nullptr)}, {"top_value", c.top_value},
                           {"top_rival", c.top_rival},   {"expected_win", c.expected_win},
                           {"in_window", c.in_window},   {"holds", c.holds}};
      }
      if (!s.extras.empty()) j["extras"] = s.extras;
      return j.dump(2) + "\n";
    }
  }
  throw ParameterError("usage: unknown format");
}

ScalingSeries parse_series_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ScalingSeries s;
    s.experiment = j.at("experiment").get<std::string>();
    s.params = j.at("params").get<std::map<std::string, double>>();
    s.points = points_from(j.at("points"));
    s.fitted_slope = j.at("fitted_slope").get<double>();
    s.slope_stderr = j.at("slope_stderr").get<double>();
    s.predicted = j.at("predicted").get<double>();
    s.tolerance = j.at("tolerance").get<double>();
    s.mode = parse_verdict_mode(j.at("mode").get<std::string>());
    s.pass = j.at("verdict").get<std::string>() == "pass";
    if (j.contains("comparison")) {
      const auto& cj = j.at("comparison");
      Comparison c;
      c.label = cj.at("label").get<std::string>();
      c.points = points_from(cj.at("points"));
      if (!cj.at("fitted_slope").is_null()) c.fitted_slope = cj.at("fitted_slope").get<double>();
      c.top_value = cj.at("top_value").get<double>();
      c.top_rival = cj.at("top_rival").get<double>();
      c.expected_win = cj.at("expected_win").get<bool>();
      c.in_window = cj.at("in_window").get<bool>();
      c.holds = cj.at("holds").get<bool>();
      s.comparison = c;
    }
    if (j.contains("extras")) s.extras = j.at("extras").get<std::map<std::string, std::vector<double>>>();
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace ilab::harness
