#include "ilab/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ilab/error.hpp"

namespace ilab::ffield {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t f = 3; f * f <= q; f += 2) {
    if (q % f == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t cell_count(std::uint64_t q, std::uint32_t dim) {
  std::uint64_t cells = 1;
  for (std::uint32_t a = 0; a < dim; ++a) {
    if (cells > kMaxCells / q) throw CapacityError("F_q^d grid exceeds the dense cell cap");
    cells *= q;
  }
  return cells;
}

std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
  const auto qq = static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(((v % qq) + qq) % qq);
}

}  // namespace

FFSet::FFSet(std::uint64_t q, std::uint32_t dim) : q_(q), dim_(dim) {
  if (!is_prime(q)) throw ParameterError("q must be prime, got " + std::to_string(q));
  if (dim == 0) throw ParameterError("F_q^d needs dim >= 1");
  indicator_.assign(cell_count(q, dim), 0);
}

std::uint64_t FFSet::index_of(std::span<const std::int64_t> x) const {
  if (x.size() != dim_) throw InputError("FFSet: coordinate count differs from dim");
  std::uint64_t id = 0;
  for (auto v : x) id = id * q_ + reduce(v, q_);
  return id;
}

std::vector<std::int64_t> FFSet::coords_of(std::uint64_t cell) const {
  std::vector<std::int64_t> x(dim_);
  for (std::uint32_t a = dim_; a-- > 0;) {
    x[a] = static_cast<std::int64_t>(cell % q_);
    cell /= q_;
  }
  return x;
}

void FFSet::insert_index(std::uint64_t cell) {
  if (cell >= indicator_.size()) throw InputError("FFSet: cell index out of range");
  if (indicator_[cell]) return;
  indicator_[cell] = 1;
  members_.push_back(cell);
}

void FFSet::insert(std::span<const std::int64_t> x) { insert_index(index_of(x)); }

bool FFSet::contains(std::span<const std::int64_t> x) const { return indicator_[index_of(x)] != 0; }

std::vector<std::uint64_t> FFSet::members() const {
  std::vector<std::uint64_t> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// visits every cell with its coordinates, last axis fastest
template <typename Fn>
void for_each_cell(std::uint64_t q, std::uint32_t dim, Fn&& fn) {
  std::vector<std::int64_t> x(dim, 0);
  const std::uint64_t cells = cell_count(q, dim);
  for (std::uint64_t id = 0; id < cells; ++id) {
    fn(id, std::span<const std::int64_t>(x));
    for (std::uint32_t a = dim; a-- > 0;) {
      if (++x[a] < static_cast<std::int64_t>(q)) break;
      x[a] = 0;
    }
  }
}

}  // namespace

FFSet ff_sphere(std::uint64_t q, std::uint32_t dim, std::int64_t t) {
  FFSet S(q, dim);
  const std::uint64_t target = reduce(t, q);
  for_each_cell(q, dim, [&](std::uint64_t id, std::span<const std::int64_t> x) {
    std::uint64_t sum = 0;
    for (auto v : x) sum = (sum + static_cast<std::uint64_t>(v * v) % q) % q;
    if (sum == target) S.insert_index(id);
  });
  return S;
}

std::string_view to_string(ParaboloidForm form) {
  return form == ParaboloidForm::standard ? "standard" : "literal";
}

FFSet ff_paraboloid(std::uint64_t q, std::uint32_t dim, ParaboloidForm form) {
  if (dim < 2) throw ParameterError("ff_paraboloid: dim must be >= 2");
  FFSet H(q, dim);
  const std::uint32_t squares = form == ParaboloidForm::standard ? dim - 1 : dim;
  for_each_cell(q, dim, [&](std::uint64_t id, std::span<const std::int64_t> x) {
    std::uint64_t sum = 0;
    for (std::uint32_t a = 0; a < squares; ++a) sum = (sum + static_cast<std::uint64_t>(x[a] * x[a]) % q) % q;
    if (sum == static_cast<std::uint64_t>(x[dim - 1])) H.insert_index(id);
  });
  return H;
}

std::complex<double> FFSpectrum::at(std::span<const std::int64_t> m) const {
  if (m.size() != dim) throw InputError("FFSpectrum: coordinate count differs from dim");
  std::uint64_t id = 0;
  for (auto v : m) id = id * q + reduce(v, q);
  return values[id];
}

std::complex<double> FFSpectrum::inverse_at(std::span<const std::int64_t> x) const {
  if (x.size() != dim) throw InputError("FFSpectrum: coordinate count differs from dim");
  std::vector<std::uint64_t> xr(dim);
  for (std::uint32_t a = 0; a < dim; ++a) xr[a] = reduce(x[a], q);
  std::complex<double> acc = 0.0;
  for_each_cell(q, dim, [&](std::uint64_t id, std::span<const std::int64_t> m) {
    std::uint64_t phase = 0;
    for (std::uint32_t a = 0; a < dim; ++a) phase = (phase + xr[a] * static_cast<std::uint64_t>(m[a])) % q;
    acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(q)) *
           values[id];
  });
  return acc;
}

double FFSpectrum::plancherel_defect(std::uint64_t set_size) const {
  if (set_size == 0) return 0.0;
  double lhs = 0.0;
  for (const auto& v : values) lhs += std::norm(v);
  const double rhs = static_cast<double>(set_size) / static_cast<double>(values.size());
  return std::abs(lhs - rhs) / rhs;
}

FFSpectrum ff_fourier(const FFSet& S) {
  FFSpectrum spec;
  spec.q = S.q();
  spec.dim = S.dim();
  const std::uint64_t q = S.q();
  const std::uint64_t cells = S.cells();
  spec.values.resize(cells);
  for (std::uint64_t c = 0; c < cells; ++c) spec.values[c] = S.contains_index(c) ? 1.0 : 0.0;

  std::vector<std::complex<double>> root(q);
  for (std::uint64_t k = 0; k < q; ++k) {
    root[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
  }
  std::vector<std::complex<double>> line(q), out(q);
  std::uint64_t stride = 1;
  for (std::uint32_t axis = 0; axis < S.dim(); ++axis) {
    // axis with stride `stride`; lines are indexed by (outer, inner)
    const std::uint64_t block = stride * q;
    for (std::uint64_t outer = 0; outer < cells; outer += block) {
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        const std::uint64_t base = outer + inner;
        bool any = false;
        for (std::uint64_t k = 0; k < q; ++k) {
          line[k] = spec.values[base + k * stride];
          any = any || line[k] != 0.0;
        }
        if (!any) continue;
        for (std::uint64_t m = 0; m < q; ++m) {
          std::complex<double> acc = 0.0;
          std::uint64_t phase = 0;
          for (std::uint64_t x = 0; x < q; ++x) {
            acc += root[phase] * line[x];
            phase += m;
            if (phase >= q) phase -= q;
          }
          out[m] = acc;
        }
        for (std::uint64_t m = 0; m < q; ++m) spec.values[base + m * stride] = out[m];
      }
    }
    stride = block;
  }
  const double scale = 1.0 / static_cast<double>(cells);
  for (auto& v : spec.values) v *= scale;
  for (std::uint64_t c = 1; c < cells; ++c) spec.max_nonzero_mag = std::max(spec.max_nonzero_mag, std::abs(spec.values[c]));
  return spec;
}

std::string_view to_string(PairMethod m) { return m == PairMethod::brute ? "brute" : "fourier"; }

PairCount ff_pair_count(const FFSet& E, const FFSet& Gamma, PairMethod method) {
  if (E.q() != Gamma.q() || E.dim() != Gamma.dim()) {
    throw ParameterError("ff_pair_count: E and Gamma live over different (q, d)");
  }
  PairCount result;
  const std::uint64_t q = E.q();
  const std::uint32_t dim = E.dim();
  if (method == PairMethod::brute) {
    const auto members = E.members();
    std::vector<std::int64_t> coords;
    coords.reserve(members.size() * dim);
    for (auto c : members) {
      const auto x = E.coords_of(c);
      coords.insert(coords.end(), x.begin(), x.end());
    }
    std::uint64_t count = 0;
    const std::size_t n = members.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t id = 0;
        for (std::uint32_t a = 0; a < dim; ++a) {
          std::int64_t d = coords[i * dim + a] - coords[j * dim + a];
          if (d < 0) d += static_cast<std::int64_t>(q);
          id = id * q + static_cast<std::uint64_t>(d);
        }
        count += Gamma.contains_index(id) ? 1 : 0;
      }
    }
    result.exact = count;
    result.value = static_cast<double>(count);
    return result;
  }
  const auto e_hat = ff_fourier(E);
  const auto g_hat = ff_fourier(Gamma);
  const double cells = static_cast<double>(E.cells());
  const double e = static_cast<double>(E.size());
  std::complex<double> tail = 0.0;
  for (std::uint64_t m = 1; m < E.cells(); ++m) tail += std::norm(e_hat.values[m]) * g_hat.values[m];
  const std::complex<double> total = e * e * static_cast<double>(Gamma.size()) / cells + cells * cells * tail;
  result.value = total.real();
  result.imag = total.imag();
  return result;
}

SharpnessSet sharpness_set(std::uint64_t q, double delta, std::uint32_t dim) {
  if (!is_prime(q)) throw ParameterError("sharpness_set: q must be prime");
  if (dim < 2) throw ParameterError("sharpness_set: dim must be >= 2");
  if (!(delta > 0.0 && delta <= 0.25)) throw ParameterError("sharpness_set: delta must lie in (0, 1/4]");
  const long double qq = static_cast<long double>(q);
  const long double top_bound = (dim - 1) * std::pow(qq, 1.0L - 2.0L * delta);
  if (!(top_bound < qq)) throw ParameterError("sharpness_set: (d-1) q^{1-2 delta} >= q wraps around");
  const auto a_max = static_cast<std::uint64_t>(std::floor(std::pow(qq, 0.5L - delta)));
  const auto top_max = static_cast<std::uint64_t>(std::floor(top_bound));

  SharpnessSet out{FFSet(q, dim), a_max + 1, top_max + 1};
  std::vector<std::int64_t> x(dim, 0);
  while (true) {
    out.E.insert(x);
    std::uint32_t a = dim;
    while (a-- > 0) {
      const std::uint64_t limit = a + 1 == dim ? top_max : a_max;
      if (static_cast<std::uint64_t>(++x[a]) <= limit) break;
      x[a] = 0;
    }
    if (a == static_cast<std::uint32_t>(-1)) break;
  }
  return out;
}

SharpnessRatio sharpness_ratio(std::uint64_t q, double delta, std::uint32_t dim) {
  const auto set = sharpness_set(q, delta, dim);
  const auto H = ff_paraboloid(q, dim);
  SharpnessRatio r;
  r.q = q;
  r.delta = delta;
  r.dim = dim;
  r.a_size = set.a_size;
  r.top_size = set.top_size;
  r.set_size = set.E.size();
  r.pair_count = *ff_pair_count(set.E, H, PairMethod::brute).exact;
  const double e = static_cast<double>(r.set_size);
  r.ratio = static_cast<double>(r.pair_count) * static_cast<double>(q) / (e * e);
  return r;
}

}  // namespace ilab::ffield
