// incidence-lab: command-line front end for the ilab core library.
//
// Exit codes: 0 success / verdict pass, 2 verdict fail, 1 error.

#include <fmt/format.h>

#include <CLI/CLI.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ilab/energy.hpp"
#include "ilab/error.hpp"
#include "ilab/ffield.hpp"
#include "ilab/gauge.hpp"
#include "ilab/generators.hpp"
#include "ilab/harness.hpp"
#include "ilab/incidence.hpp"
#include "ilab/latticecount.hpp"
#include "ilab/pointset.hpp"

namespace {

using ilab::PointSet;
using Row = nlohmann::ordered_json;

constexpr int kExitError = 1;
constexpr int kExitVerdictFail = 2;

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
};

struct GenOptions {
  std::string generator = "valtr";
  std::uint64_t n = 4;
  std::uint32_t d = 2;
  std::uint64_t k = 4;
  std::uint64_t N = 8;
  double alpha = 0.5;
  double delta = 0.5;
  std::uint32_t levels = 1;
};

void add_generator_options(CLI::App* cmd, GenOptions& g) {
  cmd->add_option("--generator,-g", g.generator, "valtr | lenz | lattice | mattila2 | mattila3")
      ->capture_default_str();
  cmd->add_option("--n", g.n, "Valtr grid parameter n")->capture_default_str();
  cmd->add_option("--d", g.d, "dimension (valtr, lattice)")->capture_default_str();
  cmd->add_option("--k", g.k, "lattice side k")->capture_default_str();
  cmd->add_option("--N", g.N, "Lenz point count (even, >= 4)")->capture_default_str();
  cmd->add_option("--alpha", g.alpha, "Cantor / Mattila2 dimension alpha")->capture_default_str();
  cmd->add_option("--delta", g.delta, "Mattila3 parameter delta")->capture_default_str();
  cmd->add_option("--levels", g.levels, "construction level")->capture_default_str();
}

PointSet make_pointset(const GenOptions& g) {
  namespace ps = ilab::pointsets;
  if (g.generator == "valtr") return ps::gen_valtr(g.n, g.d);
  if (g.generator == "lenz") return ps::gen_lenz(g.N);
  if (g.generator == "lattice") return ps::gen_lattice(g.k, g.d);
  if (g.generator == "mattila2") return ps::gen_mattila2(g.alpha, g.levels);
  if (g.generator == "mattila3") return ps::gen_mattila3(g.delta, g.levels);
  throw ilab::ParameterError("unknown generator: " + g.generator);
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ilab::InputError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw ilab::InputError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ilab::InputError("expected a comma-separated list of numbers");
  return out;
}

std::vector<std::uint64_t> parse_uints(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (double v : parse_doubles(text)) {
    if (v < 0 || v != std::floor(v)) throw ilab::InputError("expected nonnegative integers");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::string csv_cell(const Row& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

// One run renders as one JSON object; csv/gnuplot render the rows as a table.
std::string render(const std::string& command, const std::vector<Row>& rows, ilab::harness::Format format) {
  std::string out;
  if (format == ilab::harness::Format::json) {
    Row obj;
    obj["command"] = command;
    if (rows.size() == 1) {
      for (const auto& [k, v] : rows.front().items()) obj[k] = v;
    } else {
      obj["rows"] = rows;
    }
    return obj.dump(2) + "\n";
  }
  if (rows.empty()) return out;
  const bool csv = format == ilab::harness::Format::csv;
  std::vector<std::string> header;
  for (const auto& [k, v] : rows.front().items()) header.push_back(k);
  out += csv ? "" : "# ";
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? (csv ? "," : " ") : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    std::size_t i = 0;
    for (const auto& [k, v] : r.items()) {
      if (i++) out += csv ? "," : " ";
      out += csv ? csv_cell(v) : (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out += "\n";
  }
  return out;
}

void write_output(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ilab::InputError("cannot open output file '" + g.out + "'");
  f << text;
  if (!f) throw ilab::InputError("write failed for '" + g.out + "'");
}

ilab::Parallelism par_of(const Global& g) { return ilab::Parallelism{std::max(1u, g.threads)}; }

// ---- gen --------------------------------------------------------------------

std::vector<Row> cmd_gen(const GenOptions& opts, ilab::harness::Format format) {
  std::vector<Row> rows;
  if (opts.generator == "cantor") {
    const auto c = ilab::pointsets::gen_cantor_centers({opts.alpha, opts.levels});
    if (format == ilab::harness::Format::json) {
      Row r;
      r["generator"] = "cantor";
      r["alpha"] = opts.alpha;
      r["levels"] = opts.levels;
      r["denominator"] = ilab::to_string(c.denominator);
      std::vector<std::string> centers;
      for (auto v : c.numerators) centers.push_back(ilab::to_string(v) + "/" + ilab::to_string(c.denominator));
      r["centers"] = centers;
      return {r};
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      Row r;
      r["center"] = format == ilab::harness::Format::csv
                        ? Row(ilab::to_string(c.numerators[i]) + "/" + ilab::to_string(c.denominator))
                        : Row(c.value(i));
      rows.push_back(r);
    }
    return rows;
  }
  const auto P = make_pointset(opts);
  if (format == ilab::harness::Format::json) {
    Row r;
    r["generator"] = std::string(ilab::to_string(P.label()));
    r["dim"] = P.dim();
    r["size"] = P.size();
    std::vector<std::string> dens;
    for (auto d : P.denominators()) dens.push_back(ilab::to_string(d));
    r["denominators"] = dens;
    Row pts = Row::array();
    for (std::size_t i = 0; i < P.size(); ++i) {
      std::vector<std::string> p;
      for (std::size_t a = 0; a < P.dim(); ++a) p.push_back(P.coord_text(i, a));
      pts.push_back(p);
    }
    r["points"] = pts;
    return {r};
  }
  const bool exact = format == ilab::harness::Format::csv;
  rows.reserve(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    Row r;
    for (std::size_t a = 0; a < P.dim(); ++a) {
      const std::string key = "x" + std::to_string(a + 1);
      r[key] = exact ? Row(P.coord_text(i, a)) : Row(P.coord(i, a));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---- gauge ------------------------------------------------------------------

struct GaugeOptions {
  std::string kind = "paraboloid";
  std::string x;
  std::uint64_t n = 2;
  std::string diff;
};

std::vector<Row> cmd_gauge_eval(const GaugeOptions& o) {
  const auto x = parse_doubles(o.x);
  const ilab::gauge::Gauge g(ilab::gauge::parse_gauge_kind(o.kind), x.size());
  Row r;
  r["kind"] = std::string(ilab::gauge::to_string(g.kind()));
  r["x"] = o.x;
  r["value"] = g.value(x);
  return {r};
}

std::vector<Row> cmd_gauge_classify(const GaugeOptions& o) {
  std::vector<std::int64_t> diff;
  for (double v : parse_doubles(o.diff)) {
    if (v != std::floor(v)) throw ilab::InputError("--diff must list integers");
    diff.push_back(static_cast<std::int64_t>(v));
  }
  const auto cls = ilab::gauge::on_surface_exact(o.n, static_cast<std::uint32_t>(diff.size()), diff);
  Row r;
  r["n"] = o.n;
  r["d"] = diff.size();
  r["diff"] = o.diff;
  r["class"] = std::string(ilab::gauge::to_string(cls));
  return {r};
}

// ---- incidence --------------------------------------------------------------

struct IncidenceOptions {
  GenOptions gen;
  std::string norm;
  double t = 1.0;
  double eps = -1.0;
  double s = 0.0;
  std::string method = "grid";
  std::string caps = "all";
  bool falconer = false;
};

std::vector<Row> cmd_incidence(const IncidenceOptions& o, const Global& g) {
  using namespace ilab::incidence;
  Row r;
  if (o.falconer) {
    if (o.s <= 0.0) throw ilab::ParameterError("--falconer needs --s");
    const auto rec = falconer_measure_ratio(o.gen.n, o.gen.d, o.s, par_of(g));
    r["n"] = rec.n;
    r["d"] = rec.dim;
    r["s"] = rec.s;
    r["N"] = rec.N;
    r["eps"] = rec.eps;
    r["surface_count"] = rec.surface_count;
    r["band_count"] = rec.band_count;
    r["measure_lhs"] = rec.measure_lhs;
    r["ratio"] = rec.ratio;
    r["band_measure"] = rec.band_measure;
    r["band_ratio"] = rec.band_ratio;
    return {r};
  }
  const auto method = parse_method(o.method);
  IncidenceReport rep;
  if (method == Method::exact_integer) {
    if (o.gen.generator != "valtr") throw ilab::ParameterError("--method exact is only defined for valtr");
    rep = exact_valtr_incidences(o.gen.n, o.gen.d, ilab::gauge::parse_caps(o.caps));
  } else {
    const auto P = make_pointset(o.gen);
    const std::string norm = !o.norm.empty() ? o.norm : (o.gen.generator == "valtr" ? "paraboloid" : "euclidean");
    const ilab::gauge::Gauge gauge(ilab::gauge::parse_gauge_kind(norm), P.dim());
    double eps = o.eps;
    if (eps < 0.0) {
      if (o.s <= 0.0) throw ilab::ParameterError("give --eps or --s (eps = N^{-1/s})");
      eps = std::pow(static_cast<double>(P.size()), -1.0 / o.s);
    }
    rep = annulus_incidences(P, gauge, o.t, eps, method, par_of(g));
  }
  r["generator"] = o.gen.generator;
  r["N"] = rep.n_points;
  r["norm"] = std::string(ilab::gauge::to_string(rep.norm));
  r["t"] = rep.t;
  r["eps"] = rep.eps;
  r["caps"] = ilab::gauge::to_string(rep.caps);
  r["method"] = std::string(to_string(rep.method));
  r["count"] = rep.count;
  return {r};
}

// ---- energy -----------------------------------------------------------------

struct EnergyOptions {
  GenOptions gen;
  std::string s = "1.5";
  bool decompose = false;
  bool cube = false;
  std::uint64_t samples = 100000;
};

std::string gen_params(const GenOptions& g) {
  if (g.generator == "valtr") return fmt::format("n={};d={}", g.n, g.d);
  if (g.generator == "lenz") return fmt::format("N={}", g.N);
  if (g.generator == "lattice") return fmt::format("k={};d={}", g.k, g.d);
  if (g.generator == "mattila2") return fmt::format("alpha={};levels={}", g.alpha, g.levels);
  if (g.generator == "mattila3") return fmt::format("delta={};levels={}", g.delta, g.levels);
  return "";
}

std::vector<Row> cmd_energy(const EnergyOptions& o, const Global& g) {
  const auto svals = parse_doubles(o.s);
  std::vector<Row> rows;
  auto opt = [](const std::optional<double>& v) { return v ? Row(*v) : Row(nullptr); };
  if (o.cube) {
    for (double s : svals) {
      const auto est = ilab::energy::cube_self_energy(o.gen.d, s, o.samples, g.seed, par_of(g));
      Row r;
      r["d"] = o.gen.d;
      r["s"] = s;
      r["samples"] = est.samples;
      r["value"] = est.value;
      r["stderr"] = est.std_error;
      r["seed"] = g.seed;
      rows.push_back(r);
    }
    return rows;
  }
  std::vector<ilab::energy::EnergyReport> reps;
  if (o.decompose) {
    if (o.gen.generator != "valtr") throw ilab::ParameterError("--decompose applies to the valtr generator");
    for (double s : svals) {
      reps.push_back(ilab::energy::energy_decomposition(o.gen.n, o.gen.d, s, o.samples, g.seed, par_of(g)));
    }
  } else {
    reps = ilab::energy::adaptability_sums(make_pointset(o.gen), svals, par_of(g));
  }
  for (const auto& rep : reps) {
    Row r;
    r["generator"] = o.gen.generator;
    r["params"] = gen_params(o.gen);
    r["s"] = rep.s;
    r["N"] = rep.n_points;
    r["lambda_s"] = rep.lambda_s;
    r["self_term"] = opt(rep.self_term);
    r["cross_term"] = opt(rep.cross_term);
    r["seed"] = g.seed;
    if (o.decompose) {
      r["self_term_stderr"] = opt(rep.self_term_stderr);
      r["self_term_ball_bound"] = opt(rep.self_term_ball_bound);
    }
    rows.push_back(r);
  }
  return rows;
}

// ---- gauss ------------------------------------------------------------------

struct GaussOptions {
  std::uint32_t dim = 2;
  double R = -1.0;
  double r_min = -1.0;
  double r_max = -1.0;
  double stride = 1.0;
  double w = -1.0;
  std::uint64_t N = 0;
  double s = 0.0;
};

std::vector<Row> cmd_gauss(const GaussOptions& o) {
  namespace lt = ilab::lattice;
  std::vector<Row> rows;
  if (o.N > 0) {
    const auto rec = lt::lattice_incidence_total(o.dim, o.N, o.s);
    Row r;
    r["dim"] = rec.dim;
    r["N"] = rec.N;
    r["s"] = rec.s;
    r["R"] = rec.R;
    r["w"] = rec.w;
    r["shell"] = rec.a;
    r["shell_open"] = rec.a_open;
    r["I"] = rec.I;
    r["valid"] = rec.valid;
    return {r};
  }
  if (o.w >= 0.0) {
    if (o.R <= 0.0) throw ilab::ParameterError("--w needs --R");
    Row r;
    r["dim"] = o.dim;
    r["R"] = o.R;
    r["w"] = o.w;
    r["shell"] = lt::shell_count(o.dim, o.R, o.w);
    r["shell_open"] = lt::shell_count_open(o.dim, o.R, o.w);
    return {r};
  }
  std::vector<double> radii;
  if (o.R >= 0.0) {
    radii.push_back(o.R);
  } else {
    if (o.r_min < 0.0 || o.r_max < o.r_min || !(o.stride > 0.0)) {
      throw ilab::ParameterError("give --R, or --R-min/--R-max with a positive --stride");
    }
    const auto steps = static_cast<std::uint64_t>(std::floor((o.r_max - o.r_min) / o.stride + 1e-9));
    for (std::uint64_t i = 0; i <= steps; ++i) radii.push_back(o.r_min + static_cast<double>(i) * o.stride);
  }
  for (double R : radii) {
    const auto rep = lt::ball_count(o.dim, R);
    Row r;
    r["dim"] = rep.dim;
    r["R"] = rep.R;
    r["count"] = rep.count;
    r["volume"] = rep.volume_term;
    r["discrepancy"] = rep.discrepancy;
    rows.push_back(r);
  }
  return rows;
}

// ---- ffield -----------------------------------------------------------------

struct FFieldOptions {
  std::uint64_t q = 5;
  std::uint32_t d = 2;
  std::string set = "paraboloid";
  std::string gamma = "paraboloid";
  std::int64_t t = 1;
  double delta = 0.1;
  std::string mode = "spectrum";
  std::string method = "brute";
};

ilab::ffield::FFSet make_ffset(const std::string& name, const FFieldOptions& o) {
  namespace ff = ilab::ffield;
  if (name == "sphere") return ff::ff_sphere(o.q, o.d, o.t);
  if (name == "paraboloid") return ff::ff_paraboloid(o.q, o.d);
  if (name == "paraboloid-literal") return ff::ff_paraboloid(o.q, o.d, ff::ParaboloidForm::literal);
  if (name == "sharpness") return ff::sharpness_set(o.q, o.delta, o.d).E;
  if (name == "all") {
    ff::FFSet S(o.q, o.d);
    for (std::uint64_t c = 0; c < S.cells(); ++c) S.insert_index(c);
    return S;
  }
  throw ilab::ParameterError("unknown set: " + name);
}

std::vector<Row> cmd_ffield(const FFieldOptions& o) {
  namespace ff = ilab::ffield;
  Row r;
  r["q"] = o.q;
  r["d"] = o.d;
  if (o.mode == "sharpness") {
    const auto s = ff::sharpness_ratio(o.q, o.delta, o.d);
    r["delta"] = s.delta;
    r["A"] = s.a_size;
    r["A_top"] = s.top_size;
    r["E"] = s.set_size;
    r["pairs"] = s.pair_count;
    r["ratio"] = s.ratio;
    r["ratio_over_q2delta"] = s.ratio / std::pow(static_cast<double>(o.q), 2.0 * o.delta);
    return {r};
  }
  const auto S = make_ffset(o.set, o);
  r["set"] = o.set;
  if (o.set == "sphere") r["t"] = o.t;
  if (o.set == "sharpness") r["delta"] = o.delta;
  r["size"] = S.size();
  if (o.mode == "set") return {r};
  if (o.mode == "spectrum") {
    const auto spec = ff::ff_fourier(S);
    r["f_hat_0"] = spec.values[0].real();
    r["max_nonzero_mag"] = spec.max_nonzero_mag;
    r["salem_scale"] = std::pow(static_cast<double>(o.q), -0.5 * (o.d + 1));
    r["plancherel_defect"] = spec.plancherel_defect(S.size());
    return {r};
  }
  if (o.mode == "pairs") {
    const auto G = make_ffset(o.gamma, o);
    const auto method = o.method == "brute" ? ff::PairMethod::brute
                        : o.method == "fourier"
                            ? ff::PairMethod::fourier
                            : throw ilab::ParameterError("--method must be brute or fourier");
    const auto pc = ff::ff_pair_count(S, G, method);
    r["gamma"] = o.gamma;
    r["method"] = std::string(ff::to_string(method));
    r["count"] = pc.exact ? Row(*pc.exact) : Row(pc.value);
    r["imag"] = pc.imag;
    return {r};
  }
  throw ilab::ParameterError("--mode must be set, spectrum, pairs or sharpness");
}

// ---- scan -------------------------------------------------------------------

struct ScanOptions {
  std::string experiment;
  std::vector<std::pair<std::string, double>> params;
  double d = -1, s = -1, alpha = -1, delta = -1, dim = -1;
  double tolerance = -1;
  std::string ladder;
};

ilab::harness::ScalingSeries cmd_scan(const ScanOptions& o, const Global& g) {
  ilab::harness::ExperimentSpec spec;
  spec.id = o.experiment;
  const std::pair<const char*, double> named[] = {
      {"d", o.d}, {"s", o.s}, {"alpha", o.alpha}, {"delta", o.delta}, {"dim", o.dim}};
  for (const auto& [key, value] : named) {
    if (value >= 0.0) spec.params[key] = value;
  }
  if (!o.ladder.empty()) spec.ladder = parse_uints(o.ladder);
  if (o.tolerance >= 0.0) spec.tolerance = o.tolerance;
  spec.seed = g.seed;
  spec.par = par_of(g);
  return ilab::harness::run_experiment(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incidence-lab: incidence, energy, lattice and finite-field experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  app.add_option("--threads", global.threads, "worker threads")->capture_default_str();
  app.add_option("--format", global.format, "csv | json | gnuplot")->capture_default_str();
  app.add_option("--out", global.out, "write output to FILE instead of stdout");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "emit a point configuration");
  add_generator_options(gen, gen_opts);
  gen->get_option("--generator")->description("valtr | lenz | lattice | mattila2 | mattila3 | cantor");

  GaugeOptions gauge_opts;
  auto* gauge = app.add_subcommand("gauge", "norm evaluation and exact surface classification");
  gauge->require_subcommand(1);
  auto* gauge_eval = gauge->add_subcommand("eval", "value of the norm at --x");
  gauge_eval->add_option("--kind", gauge_opts.kind, "euclidean | paraboloid")->capture_default_str();
  gauge_eval->add_option("--x", gauge_opts.x, "comma-separated vector")->required();
  auto* gauge_classify = gauge->add_subcommand("classify", "classify a Valtr index difference");
  gauge_classify->add_option("--n", gauge_opts.n, "Valtr n")->capture_default_str();
  gauge_classify->add_option("--diff", gauge_opts.diff, "comma-separated index differences")->required();

  IncidenceOptions inc_opts;
  auto* inc = app.add_subcommand("incidence", "count incidences");
  add_generator_options(inc, inc_opts.gen);
  inc->add_option("--norm", inc_opts.norm, "euclidean | paraboloid (default: paraboloid for valtr)");
  inc->add_option("--t", inc_opts.t, "band radius")->capture_default_str();
  inc->add_option("--eps", inc_opts.eps, "band thickness");
  inc->add_option("--s", inc_opts.s, "exponent: eps = N^{-1/s} (falconer: measure exponent)");
  inc->add_option("--method", inc_opts.method, "exact | grid | brute")->capture_default_str();
  inc->add_option("--caps", inc_opts.caps, "caps for --method exact: all or upper,lower,ridge")
      ->capture_default_str();
  inc->add_flag("--falconer", inc_opts.falconer, "measure ratio of the thickened Valtr set");

  EnergyOptions en_opts;
  auto* en = app.add_subcommand("energy", "Riesz energies");
  add_generator_options(en, en_opts.gen);
  en->add_option("--s", en_opts.s, "exponent(s), comma-separated")->capture_default_str();
  en->add_flag("--decompose", en_opts.decompose, "term I + term II for thickened Valtr");
  en->add_flag("--cube", en_opts.cube, "Monte Carlo cube self-energy C(d,s)");
  en->add_option("--samples", en_opts.samples, "Monte Carlo samples")->capture_default_str();

  GaussOptions gauss_opts;
  auto* gauss = app.add_subcommand("gauss", "lattice points in balls and shells");
  gauss->add_option("--dim", gauss_opts.dim, "2 or 3")->capture_default_str();
  gauss->add_option("--R", gauss_opts.R, "radius");
  gauss->add_option("--R-min", gauss_opts.r_min, "first radius of a range");
  gauss->add_option("--R-max", gauss_opts.r_max, "last radius of a range");
  gauss->add_option("--stride", gauss_opts.stride, "range stride")->capture_default_str();
  gauss->add_option("--w", gauss_opts.w, "shell thickness (with --R)");
  gauss->add_option("--N", gauss_opts.N, "lattice size for the incidence total (with --s)");
  gauss->add_option("--s", gauss_opts.s, "exponent for the incidence total");

  FFieldOptions ff_opts;
  auto* ff = app.add_subcommand("ffield", "finite-field sets, spectra and pair counts");
  ff->add_option("--q", ff_opts.q, "prime modulus")->capture_default_str();
  ff->add_option("--d", ff_opts.d, "dimension")->capture_default_str();
  ff->add_option("--set", ff_opts.set, "sphere | paraboloid | paraboloid-literal | sharpness | all")
      ->capture_default_str();
  ff->add_option("--gamma", ff_opts.gamma, "second set for --mode pairs")->capture_default_str();
  ff->add_option("--t", ff_opts.t, "sphere radius t")->capture_default_str();
  ff->add_option("--delta", ff_opts.delta, "sharpness delta")->capture_default_str();
  ff->add_option("--mode", ff_opts.mode, "set | spectrum | pairs | sharpness")->capture_default_str();
  ff->add_option("--method", ff_opts.method, "brute | fourier")->capture_default_str();

  ScanOptions scan_opts;
  auto* scan = app.add_subcommand("scan", "run a scaling experiment");
  scan->add_option("--experiment,-e", scan_opts.experiment, "experiment id")
      ->required()
      ->check(CLI::IsMember(ilab::harness::experiment_ids()));
  scan->add_option("--d", scan_opts.d, "dimension d");
  scan->add_option("--s", scan_opts.s, "exponent s");
  scan->add_option("--alpha", scan_opts.alpha, "Mattila2 alpha");
  scan->add_option("--delta", scan_opts.delta, "Mattila3 / sharpness delta");
  scan->add_option("--dim", scan_opts.dim, "lattice dimension");
  scan->add_option("--tolerance", scan_opts.tolerance, "slope tolerance");
  scan->add_option("--ladder", scan_opts.ladder, "comma-separated rung parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    const auto format = ilab::harness::parse_format(global.format);
    if (*scan) {
      const auto series = cmd_scan(scan_opts, global);
      write_output(global, ilab::harness::emit(series, format));
      return series.pass ? 0 : kExitVerdictFail;
    }
    std::vector<Row> rows;
    std::string command;
    if (*gen) {
      command = "gen";
      rows = cmd_gen(gen_opts, format);
    } else if (*gauge_eval) {
      command = "gauge eval";
      rows = cmd_gauge_eval(gauge_opts);
    } else if (*gauge_classify) {
      command = "gauge classify";
      rows = cmd_gauge_classify(gauge_opts);
    } else if (*inc) {
      command = "incidence";
      rows = cmd_incidence(inc_opts, global);
    } else if (*en) {
      command = "energy";
      rows = cmd_energy(en_opts, global);
    } else if (*gauss) {
      command = "gauss";
      rows = cmd_gauss(gauss_opts);
    } else if (*ff) {
      command = "ffield";
      rows = cmd_ffield(ff_opts);
    }
    write_output(global, render(command, rows, format));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "incidence-lab: " << e.what() << "\n";
    return kExitError;
  }
}
