// Acceptance runner: one [PASS]/[FAIL] line per criterion.
//   acceptance [--only k] [--cli path/to/incidence-lab]

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "ilab/energy.hpp"
#include "ilab/ffield.hpp"
#include "ilab/generators.hpp"
#include "ilab/harness.hpp"
#include "ilab/incidence.hpp"
#include "ilab/latticecount.hpp"
#include "oracles.hpp"

using namespace ilab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g_cli;

double slope_of(const std::vector<std::pair<double, double>>& v) { return harness::fit_exponent(v).slope; }

Outcome valtr_exponent() {
  std::vector<std::pair<double, double>> d2, d3;
  for (std::uint64_t n : {8, 16, 32, 64}) {
    const auto r = incidence::exact_valtr_incidences(n, 2);
    d2.emplace_back(static_cast<double>(r.n_points), static_cast<double>(r.count));
  }
  for (std::uint64_t n : {4, 8, 16}) {
    const auto r = incidence::exact_valtr_incidences(n, 3);
    d3.emplace_back(static_cast<double>(r.n_points), static_cast<double>(r.count));
  }
  const double a = slope_of(d2), b = slope_of(d3);
  const bool ok = a >= 1.25 && a <= 1.40 && b >= 1.40 && b <= 1.60;
  return {ok, fmt::format("d=2 slope {:.4f} (4/3), d=3 slope {:.4f} (3/2)", a, b)};
}

Outcome oracle_equivalence() {
  std::uint64_t cases = 0, bad = 0;
  for (std::uint32_t d = 2; d <= 4; ++d) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
      const auto ref = oracle::valtr_pairs_brute(n, d);
      ++cases;
      if (incidence::exact_valtr_incidences(n, d).count != ref.total()) ++bad;
    }
  }
  oracle::Gen gen(20240601);
  std::uint64_t random_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto dim = static_cast<std::uint32_t>(gen.integer(1, 3));
    const auto P = oracle::random_pointset(gen, dim, gen.integer(1, 40),
                                           static_cast<std::size_t>(gen.integer(2, 250)));
    const auto kind = dim >= 2 && gen.coin() ? gauge::GaugeKind::paraboloid_body : gauge::GaugeKind::euclidean;
    const gauge::Gauge g(kind, dim);
    const double t = trial % 4 == 0 ? 1.0 : gen.real(0.02, 2.5);
    const double eps = trial % 5 == 0 ? 0.0 : gen.real(0.0, 0.6);
    const auto grid = incidence::annulus_incidences(P, g, t, eps, incidence::Method::grid);
    const auto brute = incidence::annulus_incidences(P, g, t, eps, incidence::Method::brute);
    if (grid.count != brute.count) ++random_bad;
  }
  return {bad == 0 && random_bad == 0,
          fmt::format("exact vs brute {}/{} equal; grid vs brute {}/200 equal", cases - bad, cases, 200 - random_bad)};
}

Outcome falconer_growth() {
  std::vector<std::pair<double, double>> series;
  std::string ratios, bands;
  bool increasing = true;
  double prev = 0.0;
  for (std::uint64_t n : {4, 8, 16, 32}) {
    const auto r = incidence::falconer_measure_ratio(n, 2, 1.4);
    increasing = increasing && r.ratio > prev;
    prev = r.ratio;
    series.emplace_back(static_cast<double>(r.N), r.ratio);
    ratios += fmt::format(" {:.4f}", r.ratio);
    bands += fmt::format(" {:.4f}", r.band_ratio);
  }
  const double slope = slope_of(series);
  const bool ok = increasing && slope >= 0.0 && slope <= 0.17;
  return {ok, fmt::format("ratios{} slope {:.4f} (predicted {:.4f}); band ratios (info){}", ratios, slope,
                          1.0 / 1.4 - 2.0 / 3.0, bands)};
}

Outcome energy_dichotomy() {
  const std::vector<double> s = {1.0, 1.2, 1.4};
  std::vector<double> lo(3, 1e300), hi(3, 0.0);
  for (std::uint64_t n : {4, 8, 16, 32}) {
    const auto reps = energy::adaptability_sums(pointsets::gen_valtr(n, 2), s);
    for (std::size_t i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], reps[i].lambda_s);
      hi[i] = std::max(hi[i], reps[i].lambda_s);
    }
  }
  bool ok = true;
  std::string spread;
  for (std::size_t i = 0; i < 3; ++i) {
    ok = ok && hi[i] / lo[i] <= 3.0;
    spread += fmt::format(" s={}:{:.3f}", s[i], hi[i] / lo[i]);
  }
  std::vector<std::pair<double, double>> lenz;
  for (std::uint64_t N : {128, 256, 512, 1024, 2048})
    lenz.emplace_back(static_cast<double>(N), energy::adaptability_sum(pointsets::gen_lenz(N), 1.5).lambda_s);
  const double slope = slope_of(lenz);
  ok = ok && std::abs(slope - 0.5) <= 0.1;
  return {ok, fmt::format("valtr max/min{}; lenz slope {:.4f} (0.5 +- 0.1)", spread, slope)};
}

Outcome gauss_circle() {
  const bool exact = lattice::ball_count(2, 5.0).count == 81 && oracle::lattice_le_brute(2, 25) == 81 &&
                     lattice::shell_count(2, 5.0, 0.0) == 12 &&
                     oracle::lattice_le_brute(2, 25) - oracle::lattice_le_brute(2, 24) == 12;
  const auto two = lattice::discrepancy_ratios(2, 10, 10000, 131.0 / 208.0, 18627.0 / 8320.0);
  const auto three = lattice::discrepancy_ratios(3, 5, 500, 21.0 / 16.0, 0.0);
  const bool finite = std::isfinite(two.max) && std::isfinite(three.max);
  const bool ok = exact && finite && two.above_limit == 0 && three.above_limit == 0;
  return {ok, fmt::format("exact counts {}; dim2 max {:.4g} at R={} median {:.4g} (max/median {:.1f}, {} radii "
                          "above 10x median); dim3 max {:.4g} at R={} median {:.4g} (max/median {:.1f}, {} above)",
                          exact ? "ok" : "wrong", two.max, two.argmax, two.median, two.max / two.median,
                          two.above_limit, three.max, three.argmax, three.median, three.max / three.median,
                          three.above_limit)};
}

Outcome finite_field_exactness() {
  double worst_paraboloid = 0.0, worst_sphere_ratio = 0.0, worst_plancherel = 0.0, worst_pairs = 0.0;
  oracle::Gen gen(77);
  for (std::uint64_t q : {3, 5, 7, 11, 13}) {
    for (std::uint32_t d : {2u, 3u}) {
      const double flat = std::pow(static_cast<double>(q), -(d + 1.0) / 2.0);
      const auto H = ffield::ff_paraboloid(q, d);
      const auto FH = ffield::ff_fourier(H);
      for (std::size_t i = 1; i < FH.values.size(); ++i) {
        const double m = std::abs(FH.values[i]);
        worst_paraboloid = std::max(worst_paraboloid, std::min(m, std::abs(m - flat)));
      }
      worst_plancherel = std::max(worst_plancherel, FH.plancherel_defect(H.size()));
      for (std::int64_t t = 1; t < static_cast<std::int64_t>(q); ++t) {
        const auto S = ffield::ff_sphere(q, d, t);
        const auto FS = ffield::ff_fourier(S);
        worst_sphere_ratio = std::max(worst_sphere_ratio, FS.max_nonzero_mag / flat);
        worst_plancherel = std::max(worst_plancherel, FS.plancherel_defect(S.size()));
      }
      for (int k = 0; k < 4; ++k) {
        ffield::FFSet E(q, d);
        const double density = gen.real(0.05, 0.7);
        for (std::uint64_t c = 0; c < E.cells(); ++c)
          if (gen.real(0.0, 1.0) < density) E.insert_index(c);
        const auto Gamma = k % 2 == 0 ? H : ffield::ff_sphere(q, d, gen.integer(0, static_cast<std::int64_t>(q) - 1));
        const auto brute = ffield::ff_pair_count(E, Gamma, ffield::PairMethod::brute);
        const auto fourier = ffield::ff_pair_count(E, Gamma, ffield::PairMethod::fourier);
        worst_pairs = std::max(worst_pairs, std::abs(fourier.value - static_cast<double>(*brute.exact)));
      }
    }
  }
  const bool ok = worst_paraboloid <= 1e-9 && worst_sphere_ratio <= 2.0 && worst_plancherel <= 1e-6 &&
                  worst_pairs <= 1e-6;
  return {ok, fmt::format("paraboloid dev {:.2e}; sphere max/q^-(d+1)/2 {:.4f}; plancherel {:.2e}; pairs {:.2e}",
                          worst_paraboloid, worst_sphere_ratio, worst_plancherel, worst_pairs)};
}

Outcome finite_field_sharpness() {
  const auto S = ffield::sharpness_set(101, 0.1, 2);
  const auto H = ffield::ff_paraboloid(101, 2);
  const auto pairs = ffield::ff_pair_count(S.E, H, ffield::PairMethod::brute);
  const auto closed = oracle::sharpness_closed_form(7, 41);
  bool ok = pairs.exact && *pairs.exact == 1617 && closed == 1617;
  double lo = 1e300, hi = 0.0;
  std::string norm;
  for (std::uint64_t q : {101, 211, 401, 809}) {
    const auto r = ffield::sharpness_ratio(q, 0.1, 2);
    const double v = r.ratio / std::pow(static_cast<double>(q), 0.2);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    norm += fmt::format(" {:.4f}", v);
  }
  ok = ok && hi / lo <= 4.0;
  return {ok, fmt::format("pairs {} (closed form {}); ratio/q^0.2{} spread {:.3f}",
                          pairs.exact ? static_cast<long long>(*pairs.exact) : -1LL, closed, norm, hi / lo)};
}

Outcome mattila_crossover() {
  harness::ExperimentSpec two;
  two.id = "mattila2-incidence";
  two.params = {{"s", 1.48}};
  harness::ExperimentSpec three;
  three.id = "mattila3-incidence";
  three.params = {{"s", 1.9}};
  const auto a = harness::run_experiment(two);
  const auto b = harness::run_experiment(three);
  const auto& ca = *a.comparison;
  const auto& cb = *b.comparison;
  const bool ok = ca.in_window && ca.holds && ca.top_value > ca.top_rival && cb.in_window && cb.holds &&
                  cb.top_value > cb.top_rival;
  return {ok, fmt::format("2D top rung {} vs lattice {} (slope {:.3f}); 3D top rung {} vs lattice {} (slope {:.3f})",
                          ca.top_value, ca.top_rival, a.fitted_slope, cb.top_value, cb.top_rival, b.fitted_slope)};
}

std::pair<int, std::string> run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_determinism() {
  if (g_cli.empty()) return {false, "no --cli path given"};
  const std::vector<std::string> runs = {
      "gen -g valtr --n 4 --d 2",
      "--format json gen -g mattila2 --alpha 0.48 --levels 2",
      "gen -g cantor --alpha 0.6 --levels 5",
      "incidence -g valtr --n 8 --d 2 --method exact",
      "incidence -g mattila2 --alpha 0.48 --levels 2 --norm euclidean --t 1 --s 1.48 --method grid",
      "--format json incidence --falconer --n 8 --s 1.4",
      "energy -g lenz --N 256 --s 1.0,1.5",
      "energy --cube --d 2 --s 1.4 --samples 50000",
      "--format json energy --decompose --n 4 --d 2 --s 1.4 --samples 20000",
      "gauss --dim 2 --R-min 10 --R-max 300",
      "gauss --dim 2 --N 10000 --s 1.48",
      "ffield --q 11 --d 2 --set paraboloid --mode spectrum",
      "--format json ffield --q 101 --mode sharpness --delta 0.1",
      "--format json scan -e valtr-incidence",
      "--format gnuplot scan -e lenz-energy --ladder 64,128,256",
  };
  int identical = 0;
  std::string first_bad;
  for (const auto& r : runs) {
    const auto cmd = fmt::format("'{}' --seed 7 --threads 2 {} 2>&1", g_cli, r);
    const auto a = run_capture(cmd);
    const auto b = run_capture(cmd);
    if (a == b && a.first != 1 && a.first != -1 && !a.second.empty())
      ++identical;
    else if (first_bad.empty())
      first_bad = fmt::format("; first mismatch or error: `{}` (exit {})", r, a.first);
  }
  return {identical == static_cast<int>(runs.size()),
          fmt::format("{}/{} commands byte-identical across two runs{}", identical, runs.size(), first_bad)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::stoi(argv[++i]);
    else if (a == "--cli" && i + 1 < argc) g_cli = argv[++i];
    else {
      fmt::print(stderr, "usage: acceptance [--only k] [--cli path]\n");
      return 64;
    }
  }
  const std::vector<Criterion> all = {
      {1, "valtr incidence exponent", 5, valtr_exponent},
      {2, "oracle equivalence", 60, oracle_equivalence},
      {3, "measure ratio growth", 30, falconer_growth},
      {4, "energy dichotomy", 60, energy_dichotomy},
      {5, "gauss circle discrepancy", 120, gauss_circle},
      {6, "finite-field exactness", 60, finite_field_exactness},
      {7, "finite-field sharpness", 120, finite_field_sharpness},
      {8, "annulus vs lattice crossover", 300, mattila_crossover},
      {9, "cli determinism", 600, cli_determinism},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    all_pass = all_pass && pass;
    fmt::print("[{}] criterion {}: {} | {} | {:.2f}s (budget {}s{})\n", pass ? "PASS" : "FAIL", c.id, c.name,
               o.detail, secs, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
