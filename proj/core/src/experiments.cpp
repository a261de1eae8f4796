#include <cmath>
#include <functional>
#include <string>

#include "ilab/energy.hpp"
#include "ilab/error.hpp"
#include "ilab/ffield.hpp"
#include "ilab/gauge.hpp"
#include "ilab/generators.hpp"
#include "ilab/harness.hpp"
#include "ilab/incidence.hpp"
#include "ilab/latticecount.hpp"

namespace ilab::harness {

namespace {

using Ladder = std::vector<std::uint64_t>;

double param(const ExperimentSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

std::uint32_t int_param(const ExperimentSpec& spec, const std::string& key, std::uint32_t fallback) {
  const double v = param(spec, key, fallback);
  if (v < 0 || v != std::floor(v)) throw ParameterError("parameter '" + key + "' must be a nonnegative integer");
  return static_cast<std::uint32_t>(v);
}

Ladder ladder_or(const ExperimentSpec& spec, Ladder fallback) {
  Ladder l = spec.ladder.empty() ? std::move(fallback) : spec.ladder;
  if (l.size() < 3) throw ParameterError("ladder needs at least 3 rungs");
  return l;
}

ScalingSeries start(const ExperimentSpec& spec, double predicted, double tolerance,
                    VerdictMode mode = VerdictMode::two_sided) {
  ScalingSeries s;
  s.experiment = spec.id;
  s.predicted = predicted;
  s.tolerance = spec.tolerance.value_or(tolerance);
  s.mode = mode;
  s.params["seed"] = static_cast<double>(spec.seed);
  s.params["threads"] = spec.par.threads;
  return s;
}

std::uint64_t ceil_power_side(double N, std::uint32_t dim) {
  auto k = static_cast<std::uint64_t>(std::ceil(std::pow(N, 1.0 / dim) - 1e-9));
  while (std::pow(static_cast<double>(k), dim) < N) ++k;
  return k;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

ScalingSeries valtr_incidence(const ExperimentSpec& spec) {
  const auto d = int_param(spec, "d", 2);
  const Ladder def = d == 2 ? Ladder{8, 16, 32, 64} : d == 3 ? Ladder{4, 8, 16} : Ladder{2, 3, 4, 6};
  auto s = start(spec, 2.0 - 2.0 / (d + 1), 0.12);
  s.params["d"] = d;
  for (auto n : ladder_or(spec, def)) {
    const auto rep = incidence::exact_valtr_incidences(n, d);
    s.points.push_back({static_cast<double>(rep.n_points), static_cast<double>(rep.count)});
  }
  return s;
}

ScalingSeries falconer_ratio(const ExperimentSpec& spec) {
  const auto d = int_param(spec, "d", 2);
  const double sv = param(spec, "s", d == 2 ? 1.4 : 0.5 * d + 0.4);
  const Ladder def = d == 2 ? Ladder{4, 8, 16, 32} : Ladder{2, 3, 4, 6};
  auto s = start(spec, 1.0 / sv - 2.0 / (d + 1), 0.12);
  s.params["d"] = d;
  s.params["s"] = sv;
  for (auto n : ladder_or(spec, def)) {
    const auto rec = incidence::falconer_measure_ratio(n, d, sv, spec.par);
    s.points.push_back({static_cast<double>(rec.N), rec.ratio});
    s.extras["eps"].push_back(rec.eps);
    s.extras["surface_count"].push_back(static_cast<double>(rec.surface_count));
    s.extras["band_count"].push_back(static_cast<double>(rec.band_count));
    s.extras["band_ratio"].push_back(rec.band_ratio);
  }
  return s;
}

ScalingSeries lenz_energy(const ExperimentSpec& spec) {
  const double sv = param(spec, "s", 1.5);
  auto s = start(spec, sv - 1.0, 0.1);
  s.params["s"] = sv;
  for (auto N : ladder_or(spec, {64, 128, 256, 512})) {
    const auto P = pointsets::gen_lenz(N);
    s.points.push_back({static_cast<double>(N), energy::adaptability_sum(P, sv, spec.par).lambda_s});
  }
  return s;
}

ScalingSeries valtr_energy(const ExperimentSpec& spec) {
  const auto d = int_param(spec, "d", 2);
  const double sv = param(spec, "s", d == 2 ? 1.4 : 0.5 * d + 0.4);
  const Ladder def = d == 2 ? Ladder{4, 8, 16, 32} : Ladder{3, 6, 12};
  auto s = start(spec, 0.0, 0.12);
  s.params["d"] = d;
  s.params["s"] = sv;
  for (auto n : ladder_or(spec, def)) {
    const auto P = pointsets::gen_valtr(n, d);
    s.points.push_back({static_cast<double>(P.size()), energy::adaptability_sum(P, sv, spec.par).lambda_s});
  }
  return s;
}

// Mattila annulus incidences (t = 1, eps = N^{-1/s}) against the lattice shell totals
ScalingSeries mattila(const ExperimentSpec& spec, std::uint32_t dim) {
  double sv = 0.0;
  double predicted = 0.0;
  std::function<PointSet(std::uint32_t)> make;
  auto s = start(spec, 0.0, 0.12);
  if (dim == 2) {
    const double alpha = spec.params.count("alpha") ? param(spec, "alpha", 0.48) : param(spec, "s", 1.48) - 1.0;
    sv = 1.0 + alpha;
    predicted = 1.0 + 1.0 / (2.0 * sv);
    s.params["alpha"] = alpha;
    make = [alpha](std::uint32_t level) { return pointsets::gen_mattila2(alpha, level); };
  } else {
    const double delta =
        spec.params.count("delta") ? param(spec, "delta", 1.0 / 15) : 2.0 * (2.0 - param(spec, "s", 1.9)) / 3.0;
    const auto ex = pointsets::mattila3_exponents(delta);
    sv = ex.s;
    predicted = 1.0 + ex.alpha / (2.0 * ex.alpha + ex.beta);
    s.params["delta"] = delta;
    make = [delta](std::uint32_t level) { return pointsets::gen_mattila3(delta, level); };
  }
  s.predicted = predicted;
  s.params["s"] = sv;
  const Ladder def = dim == 2 ? Ladder{1, 2, 3, 4} : Ladder{3, 4, 5};
  const gauge::Gauge g(gauge::GaugeKind::euclidean, dim);
  Comparison cmp;
  cmp.label = "lattice";
  cmp.expected_win = dim == 2 ? sv < 1.5 : sv < 2.0;
  cmp.in_window = sv > lattice::validity_threshold(dim);
  for (auto level : ladder_or(spec, def)) {
    const auto P = make(static_cast<std::uint32_t>(level));
    const double N = static_cast<double>(P.size());
    const double eps = std::pow(N, -1.0 / sv);
    const auto rep = incidence::annulus_incidences(P, g, 1.0, eps, incidence::Method::grid, spec.par);
    s.points.push_back({N, static_cast<double>(rep.count)});
    s.extras["level"].push_back(static_cast<double>(level));
    s.extras["eps"].push_back(eps);

    const std::uint64_t NL = ipow(ceil_power_side(N, dim), dim);
    const auto lat = lattice::lattice_incidence_total(dim, NL, sv);
    cmp.points.push_back({static_cast<double>(NL), static_cast<double>(lat.I)});
    s.extras["lattice_I_open"].push_back(static_cast<double>(NL) * static_cast<double>(lat.a_open));
  }
  s.comparison = cmp;
  return s;
}

ScalingSeries lattice_incidence(const ExperimentSpec& spec) {
  const auto dim = int_param(spec, "dim", 2);
  const double sv = param(spec, "s", dim == 2 ? 1.48 : 1.9);
  const Ladder def = dim == 2 ? Ladder{200, 400, 800, 1600} : Ladder{20, 40, 80, 160};
  auto s = start(spec, 2.0 - 1.0 / sv, 0.12);
  s.params["dim"] = dim;
  s.params["s"] = sv;
  s.params["valid"] = sv > lattice::validity_threshold(dim) ? 1.0 : 0.0;
  for (auto k : ladder_or(spec, def)) {
    const auto rec = lattice::lattice_incidence_total(dim, ipow(k, dim), sv);
    s.points.push_back({static_cast<double>(rec.N), static_cast<double>(rec.I)});
    s.extras["a"].push_back(static_cast<double>(rec.a));
    s.extras["a_open"].push_back(static_cast<double>(rec.a_open));
  }
  return s;
}

ScalingSeries gauss_discrepancy(const ExperimentSpec& spec) {
  const auto dim = int_param(spec, "dim", 2);
  const double predicted = dim == 2 ? 131.0 / 208.0 : 21.0 / 16.0;
  const Ladder def = dim == 2 ? Ladder{1000, 2000, 4000, 8000} : Ladder{50, 100, 200, 400};
  auto s = start(spec, predicted, 0.12, VerdictMode::upper_bound);
  s.params["dim"] = dim;
  for (auto R : ladder_or(spec, def)) {
    const auto r = static_cast<std::int64_t>(R);
    s.points.push_back({static_cast<double>(R), lattice::max_abs_discrepancy(dim, r / 2, r)});
  }
  return s;
}

ScalingSeries ff_sharpness(const ExperimentSpec& spec) {
  const double delta = param(spec, "delta", 0.1);
  const auto d = int_param(spec, "d", 2);
  auto s = start(spec, 2.0 * delta, 0.12);
  s.params["delta"] = delta;
  s.params["d"] = d;
  for (auto q : ladder_or(spec, {101, 211, 401, 809})) {
    const auto r = ffield::sharpness_ratio(q, delta, d);
    s.points.push_back({static_cast<double>(q), r.ratio});
    s.extras["set_size"].push_back(static_cast<double>(r.set_size));
    s.extras["pair_count"].push_back(static_cast<double>(r.pair_count));
  }
  return s;
}

}  // namespace

std::vector<std::string> experiment_ids() {
  return {"valtr-incidence",    "falconer-ratio",     "lenz-energy",       "valtr-energy",
          "mattila2-incidence", "mattila3-incidence", "lattice-incidence", "gauss-discrepancy",
          "ff-sharpness"};
}

ScalingSeries run_experiment(const ExperimentSpec& spec) {
  ScalingSeries s;
  if (spec.id == "valtr-incidence") {
    s = valtr_incidence(spec);
  } else if (spec.id == "falconer-ratio") {
    s = falconer_ratio(spec);
  } else if (spec.id == "lenz-energy") {
    s = lenz_energy(spec);
  } else if (spec.id == "valtr-energy") {
    s = valtr_energy(spec);
  } else if (spec.id == "mattila2-incidence") {
    s = mattila(spec, 2);
  } else if (spec.id == "mattila3-incidence") {
    s = mattila(spec, 3);
  } else if (spec.id == "lattice-incidence") {
    s = lattice_incidence(spec);
  } else if (spec.id == "gauss-discrepancy") {
    s = gauss_discrepancy(spec);
  } else if (spec.id == "ff-sharpness") {
    s = ff_sharpness(spec);
  } else {
    throw ParameterError("unknown experiment id: " + spec.id);
  }
  finalize(s);
  return s;
}

}  // namespace ilab::harness
