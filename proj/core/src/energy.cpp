#include "ilab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ilab/error.hpp"
#include "ilab/generators.hpp"

namespace ilab::energy {

namespace {
constexpr std::size_t kLeaf = 16;
constexpr std::uint64_t kSamplesPerChunk = 1u << 16;
constexpr std::uint64_t kMinSamples = 10000;

double sphere_area(std::uint32_t dim) {
  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}
}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= kLeaf) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::vector<EnergyReport> adaptability_sums(const PointSet& P, std::span<const double> s, Parallelism par) {
  const std::size_t n = P.size();
  if (n < 2) throw InputError("adaptability_sum: need at least two points");
  for (double e : s) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ParameterError("adaptability_sum: s must be positive");
  }
  const std::size_t ns = s.size();
  const std::size_t dim = P.dim();
  // row i holds the unordered pairs (i, j > i); rows are reduced pairwise afterwards
  std::vector<double> rows(n * ns, 0.0);
  const std::size_t chunks = std::max<std::size_t>(1, par.threads) * 16;
  parallel_chunks(n, chunks, par, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> buf;
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = P.point(i);
      const std::size_t m = n - i - 1;
      buf.assign(m * ns, 0.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto y = P.point(j);
        double r2 = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
          const double d = y[a] - x[a];
          r2 += d * d;
        }
        if (r2 == 0.0) throw InputError("adaptability_sum: coincident points give infinite energy");
        const double lr = std::log(r2);
        for (std::size_t k = 0; k < ns; ++k) buf[k * m + (j - i - 1)] = std::exp(-0.5 * s[k] * lr);
      }
      for (std::size_t k = 0; k < ns; ++k) {
        rows[k * n + i] = pairwise_sum(std::span<const double>(buf.data() + k * m, m));
      }
    }
  });
  std::vector<EnergyReport> out(ns);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t k = 0; k < ns; ++k) {
    const double total = 2.0 * pairwise_sum(std::span<const double>(rows.data() + k * n, n));
    out[k].s = s[k];
    out[k].n_points = n;
    out[k].lambda_s = total * norm;
  }
  return out;
}

EnergyReport adaptability_sum(const PointSet& P, double s, Parallelism par) {
  const double one[] = {s};
  return adaptability_sums(P, one, par).front();
}

MonteCarloEstimate cube_self_energy(std::uint32_t dim, double s, std::uint64_t samples, std::uint64_t seed,
                                    Parallelism par) {
  if (dim == 0) throw ParameterError("cube_self_energy: dim must be positive");
  if (!std::isfinite(s) || s < 0.0) throw ParameterError("cube_self_energy: s must be >= 0");
  if (s >= dim) throw ParameterError("cube_self_energy: integral diverges for s >= d");
  if (samples < kMinSamples) throw ParameterError("cube_self_energy: need at least 1e4 samples");
  MonteCarloEstimate est;
  est.samples = samples;
  if (s == 0.0) {
    est.value = 1.0;
    return est;
  }

  // z = x - y has density prod(1 - |z_j|) on [-1,1]^d. In polar form z = r u the
  // radial factor r^{d-1-s} is sampled exactly on [0, rho(u)], rho(u) = 1/max|u_j|,
  // which leaves the bounded weight prod(1 - |r u_j|).
  const double k = dim - s;
  const double area = dim == 1 ? 2.0 : sphere_area(dim);
  const std::uint64_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  std::vector<double> sums(chunks), sq(chunks);
  parallel_chunks(chunks, chunks, par, [&](std::size_t c, std::size_t, std::size_t) {
    const std::uint64_t first = c * kSamplesPerChunk;
    const std::uint64_t count = std::min(kSamplesPerChunk, samples - first);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    std::vector<double> u(dim);
    double acc = 0.0;
    double acc2 = 0.0;
    for (std::uint64_t t = 0; t < count; ++t) {
      double norm2 = 0.0;
      if (dim == 1) {
        u[0] = unif(rng) < 0.5 ? -1.0 : 1.0;
        norm2 = 1.0;
      } else {
        do {
          norm2 = 0.0;
          for (auto& v : u) {
            v = gauss(rng);
            norm2 += v * v;
          }
        } while (norm2 == 0.0);
      }
      const double inv = 1.0 / std::sqrt(norm2);
      double umax = 0.0;
      for (auto& v : u) {
        v *= inv;
        umax = std::max(umax, std::abs(v));
      }
      const double rho = 1.0 / umax;
      const double r = rho * std::pow(1.0 - unif(rng), 1.0 / k);
      double w = 1.0;
      for (double v : u) w *= std::max(0.0, 1.0 - std::abs(r * v));
      const double f = area * std::pow(rho, k) / k * w;
      acc += f;
      acc2 += f * f;
    }
    sums[c] = acc;
    sq[c] = acc2;
  });
  const double total = pairwise_sum(sums);
  const double total2 = pairwise_sum(sq);
  const double nn = static_cast<double>(samples);
  est.value = total / nn;
  const double var = std::max(0.0, total2 / nn - est.value * est.value) * nn / (nn - 1.0);
  est.std_error = std::sqrt(var / nn);
  return est;
}

double ball_self_bound(std::uint32_t dim, double s) {
  if (dim == 0 || !(s < dim) || s < 0.0) throw ParameterError("ball_self_bound: need 0 <= s < d");
  const double area = dim == 1 ? 2.0 : sphere_area(dim);
  return area * std::pow(static_cast<double>(dim), 0.5 * (dim - s)) / (dim - s);
}

EnergyReport energy_decomposition(std::uint64_t n, std::uint32_t dim, double s, std::uint64_t samples,
                                  std::uint64_t seed, Parallelism par) {
  if (dim < 2) throw ParameterError("energy_decomposition: dim must be >= 2");
  if (!(s >= 0.5 * dim && s < 0.5 * (dim + 1))) {
    throw ParameterError("energy_decomposition: s must lie in [d/2, (d+1)/2)");
  }
  if (n < 2) throw ParameterError("energy_decomposition: n must be >= 2");
  const auto P = pointsets::gen_valtr(n, dim);

  const auto self = cube_self_energy(dim, s, samples, seed, par);
  EnergyReport report = adaptability_sum(P, s, par);
  // N eps^s = 1 and eps^{2s} = N^{-2}, so term I is C(d,s) and term II is lambda_s
  report.self_term = self.value;
  report.self_term_stderr = self.std_error;
  report.self_term_ball_bound = ball_self_bound(dim, s);
  report.cross_term = report.lambda_s;
  report.lambda_s = *report.self_term + *report.cross_term;
  return report;
}

}  // namespace ilab::energy
