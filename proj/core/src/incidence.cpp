#include "ilab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ilab/band.hpp"
#include "ilab/error.hpp"
#include "ilab/generators.hpp"

namespace ilab::incidence {

using gauge::Caps;
using gauge::SurfaceClass;

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact_integer: return "exact_integer";
    case Method::grid: return "grid";
    case Method::brute: return "brute";
  }
  return "grid";
}

Method parse_method(std::string_view name) {
  if (name == "exact" || name == "exact_integer") return Method::exact_integer;
  if (name == "grid") return Method::grid;
  if (name == "brute") return Method::brute;
  throw ParameterError("unknown method: " + std::string(name));
}

IncidenceReport exact_valtr_incidences(std::uint64_t n, std::uint32_t dim, Caps caps) {
  if (n == 0) throw ParameterError("exact_valtr_incidences: n must be >= 1");
  if (dim < 2) throw ParameterError("exact_valtr_incidences: dim must be >= 2");

  IncidenceReport report;
  report.norm = gauge::GaugeKind::paraboloid_body;
  report.t = 1.0;
  report.eps = 0.0;
  report.caps = caps;
  report.method = Method::exact_integer;

  Int npts = 1;
  for (std::uint32_t a = 0; a <= dim; ++a) {
    if (!checked_mul(npts, static_cast<Int>(n), npts) || npts > std::numeric_limits<std::uint64_t>::max()) {
      throw CapacityError("exact_valtr_incidences: n^(d+1) overflows 64 bits");
    }
  }
  report.n_points = static_cast<std::uint64_t>(npts);

  // enumerate |D_j| in [0, n-1] for the d-1 free axes; +-D_j contribute alike
  const std::uint32_t free_axes = dim - 1;
  long double work = std::pow(static_cast<long double>(n), free_axes);
  if (work > 1e11L) throw CapacityError("exact_valtr_incidences: difference enumeration too large");

  const Int n2 = static_cast<Int>(n) * static_cast<Int>(n);
  std::vector<std::uint64_t> delta(free_axes, 0);
  Int total = 0;
  auto overflow = [] { return CapacityError("exact_valtr_incidences: pair count overflows"); };
  while (true) {
    Int S = 0;
    Int weight = 1;
    for (auto dj : delta) {
      S += static_cast<Int>(dj) * static_cast<Int>(dj);
      Int factor = static_cast<Int>(n - dj) * (dj == 0 ? 1 : 2);
      if (!checked_mul(weight, factor, weight)) throw overflow();
    }
    Int per = 0;
    if (S > 0 && S < n2) {
      // upper: D_d = n^2 - S, lower: D_d = S - n^2; both have n^2 - |D_d| = S row pairs
      if (gauge::contains(caps, SurfaceClass::upper)) per += S;
      if (gauge::contains(caps, SurfaceClass::lower)) per += S;
    } else if (S == n2 && gauge::contains(caps, SurfaceClass::ridge)) {
      per = n2;
    }
    if (per != 0) {
      Int term;
      if (!checked_mul(weight, per, term) || !checked_add(total, term, total)) throw overflow();
    }

    std::uint32_t axis = 0;
    while (axis < free_axes && ++delta[axis] == n) delta[axis++] = 0;
    if (axis == free_axes) break;
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) throw overflow();
  report.count = static_cast<std::uint64_t>(total);
  return report;
}

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;
constexpr std::size_t kChunksPerThread = 16;

// Points bucketed into a dense axis-aligned grid, sorted by cell (last axis fastest),
// so a run of cells along the last axis is a contiguous run of points.
struct Grid {
  std::size_t dim = 0;
  double h = 0.0;
  std::vector<double> lo;
  std::vector<std::int64_t> cells;
  std::vector<std::size_t> stride;
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> order;

  Grid(const PointSet& P, double side) : dim(P.dim()), h(side), lo(dim), cells(dim), stride(dim) {
    std::vector<double> hi(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      lo[a] = hi[a] = P.coord(0, a);
    }
    for (std::size_t i = 1; i < P.size(); ++i) {
      for (std::size_t a = 0; a < dim; ++a) {
        lo[a] = std::min(lo[a], P.coord(i, a));
        hi[a] = std::max(hi[a], P.coord(i, a));
      }
    }
    while (true) {
      std::size_t total = 1;
      bool fits = true;
      for (std::size_t a = 0; a < dim; ++a) {
        cells[a] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((hi[a] - lo[a]) / h)));
        if (total > kMaxCells / static_cast<std::size_t>(cells[a])) fits = false;
        total *= static_cast<std::size_t>(cells[a]);
      }
      if (fits && total <= kMaxCells) break;
      h *= 2.0;
    }
    std::size_t s = 1;
    for (std::size_t a = dim; a-- > 0;) {
      stride[a] = s;
      s *= static_cast<std::size_t>(cells[a]);
    }
    const std::size_t n = P.size();
    std::vector<std::uint32_t> cell_of(n);
    start.assign(s + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t id = 0;
      for (std::size_t a = 0; a < dim; ++a) id += static_cast<std::size_t>(cell(a, P.coord(i, a))) * stride[a];
      cell_of[i] = static_cast<std::uint32_t>(id);
      ++start[id + 1];
    }
    for (std::size_t c = 0; c < s; ++c) start[c + 1] += start[c];
    order.resize(n);
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) order[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }

  std::int64_t cell(std::size_t a, double x) const {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((x - lo[a]) / h)), 0, cells[a] - 1);
  }

  // clamped floor((x - lo)/h), safe for far-out x
  std::int64_t index_floor(std::size_t a, double x) const {
    const double f = std::floor((x - lo[a]) / h);
    if (f < -1.0) return -1;
    if (f > static_cast<double>(cells[a])) return cells[a];
    return static_cast<std::int64_t>(f);
  }
  std::int64_t index_ceil(std::size_t a, double x) const {
    const double f = std::ceil((x - lo[a]) / h);
    if (f < -1.0) return -1;
    if (f > static_cast<double>(cells[a])) return cells[a];
    return static_cast<std::int64_t>(f);
  }
};

struct Query {
  const Grid& grid;
  const PointSet& P;
  const BandPredicate& band;
  double outer2;  // (T + pad)^2
  double inner2;  // (r_in - pad)^2, r_in the Euclidean lower bound of the band
  double pad;

  std::uint64_t count_from(std::size_t i) const {
    return walk(i, P.point(i), 0, 0, 0.0, 0.0);
  }

  std::uint64_t scan_range(std::size_t i, std::size_t row, std::int64_t k0, std::int64_t k1) const {
    std::uint64_t hits = 0;
    if (k0 > k1) return 0;
    const std::size_t last = grid.dim - 1;
    const std::size_t first = grid.start[row + static_cast<std::size_t>(k0) * grid.stride[last]];
    const std::size_t end = grid.start[row + static_cast<std::size_t>(k1 + 1) * grid.stride[last]];
    for (std::size_t s = first; s < end; ++s) {
      const std::size_t j = grid.order[s];
      if (j != i && band.contains(P, i, j)) ++hits;
    }
    return hits;
  }

  std::uint64_t walk(std::size_t i, std::span<const double> p, std::size_t axis, std::size_t row, double m2,
                     double M2) const {
    const double h = grid.h;
    const double lo = grid.lo[axis];
    if (axis + 1 == grid.dim) {
      const double reach = std::sqrt(std::max(0.0, outer2 - m2));
      std::int64_t k0 = std::max<std::int64_t>(0, grid.index_floor(axis, p[axis] - reach));
      std::int64_t k1 = std::min<std::int64_t>(grid.cells[axis] - 1, grid.index_floor(axis, p[axis] + reach));
      if (k0 > k1) return 0;
      // cells lying wholly within distance b along this axis are too close
      std::int64_t e0 = 1;
      std::int64_t e1 = 0;
      if (inner2 > M2) {
        const double b = std::sqrt(inner2 - M2);
        e0 = grid.index_ceil(axis, p[axis] - b);
        e1 = grid.index_floor(axis, p[axis] + b) - 1;
      }
      if (e0 > e1 || e1 < k0 || e0 > k1) return scan_range(i, row, k0, k1);
      return scan_range(i, row, k0, std::min(k1, e0 - 1)) + scan_range(i, row, std::max(k0, e1 + 1), k1);
    }
    const double reach = std::sqrt(std::max(0.0, outer2 - m2));
    const std::int64_t c0 = std::max<std::int64_t>(0, grid.index_floor(axis, p[axis] - reach));
    const std::int64_t c1 = std::min<std::int64_t>(grid.cells[axis] - 1, grid.index_floor(axis, p[axis] + reach));
    std::uint64_t hits = 0;
    for (std::int64_t c = c0; c <= c1; ++c) {
      const double cell_lo = lo + static_cast<double>(c) * h;
      const double cell_hi = cell_lo + h;
      const double dmin = std::max({0.0, cell_lo - p[axis], p[axis] - cell_hi});
      const double dmax = std::max(std::abs(p[axis] - cell_lo), std::abs(p[axis] - cell_hi)) + pad;
      const double nm2 = m2 + dmin * dmin;
      if (nm2 > outer2) continue;
      hits += walk(i, p, axis + 1, row + static_cast<std::size_t>(c) * grid.stride[axis], nm2, M2 + dmax * dmax);
    }
    return hits;
  }
};

std::uint64_t count_chunked(std::size_t n, Parallelism par,
                            const std::function<std::uint64_t(std::size_t)>& per_point) {
  const std::size_t chunks = std::max<std::size_t>(1, par.threads) * kChunksPerThread;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(n, chunks, par, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::uint64_t sum = 0;
    for (std::size_t i = begin; i < end; ++i) sum += per_point(i);
    partial[c] = sum;
  });
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace

IncidenceReport annulus_incidences(const PointSet& P, const gauge::Gauge& g, double t, double eps, Method method,
                                   Parallelism par) {
  if (P.empty()) throw ParameterError("annulus_incidences: empty point set");
  if (P.dim() != g.dim()) throw ParameterError("annulus_incidences: gauge and point set dimensions differ");
  if (method == Method::exact_integer) {
    throw ParameterError("annulus_incidences: method must be grid or brute");
  }
  const BandPredicate band(g, t, eps);

  IncidenceReport report;
  report.n_points = P.size();
  report.norm = g.kind();
  report.t = t;
  report.eps = eps;
  report.caps = Caps::all;
  report.method = method;

  const std::size_t n = P.size();
  if (method == Method::brute) {
    report.count = count_chunked(n, par, [&](std::size_t i) {
      std::uint64_t hits = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && band.contains(P, i, j)) ++hits;
      }
      return hits;
    });
    return report;
  }

  const Grid grid(P, std::max(eps, t / 64.0));
  const double T = band.outer();
  const double pad = 1e-9 * (1.0 + T);
  const double r_in = t / g.euclid_ratio_max() * (1.0 - 1e-12) - pad;
  const Query query{grid, P, band, (T + pad) * (T + pad), r_in > 0.0 ? r_in * r_in : 0.0, pad};
  report.count = count_chunked(n, par, [&](std::size_t i) { return query.count_from(i); });
  return report;
}

FalconerRecord falconer_measure_ratio(std::uint64_t n, std::uint32_t dim, double s, Parallelism par) {
  if (dim < 2) throw ParameterError("falconer_measure_ratio: dim must be >= 2");
  const double lo = 0.5 * dim;
  const double hi = 0.5 * (dim + 1);
  if (!(s >= lo && s < hi)) {
    throw ParameterError("falconer_measure_ratio: s must lie in [d/2, (d+1)/2)");
  }
  if (n == 0) throw ParameterError("falconer_measure_ratio: n must be >= 1");

  FalconerRecord rec;
  rec.n = n;
  rec.dim = dim;
  rec.s = s;
  const auto surface = exact_valtr_incidences(n, dim, Caps::all);
  rec.N = surface.n_points;
  rec.eps = std::pow(static_cast<double>(rec.N), -1.0 / s);
  rec.surface_count = surface.count;

  const auto P = pointsets::gen_valtr(n, dim);
  const gauge::Gauge g(gauge::GaugeKind::paraboloid_body, dim);
  rec.band_count = annulus_incidences(P, g, 1.0, rec.eps, Method::grid, par).count;

  const double weight = std::pow(rec.eps, 2.0 * s);
  rec.measure_lhs = weight * static_cast<double>(rec.surface_count);
  rec.ratio = rec.measure_lhs / rec.eps;
  rec.band_measure = weight * static_cast<double>(rec.band_count);
  rec.band_ratio = rec.band_measure / rec.eps;
  return rec;
}

}  // namespace ilab::incidence
