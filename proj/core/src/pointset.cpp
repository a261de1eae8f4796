#include "ilab/pointset.hpp"

#include <algorithm>
#include <numeric>

#include "ilab/error.hpp"

namespace ilab {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::valtr: return "valtr";
    case Provenance::lenz: return "lenz";
    case Provenance::lattice: return "lattice";
    case Provenance::mattila2: return "mattila2";
    case Provenance::mattila3: return "mattila3";
    case Provenance::cantor: return "cantor";
    case Provenance::custom: return "custom";
  }
  return "custom";
}

Provenance parse_provenance(std::string_view name) {
  for (auto p : {Provenance::valtr, Provenance::lenz, Provenance::lattice, Provenance::mattila2,
                 Provenance::mattila3, Provenance::cantor, Provenance::custom}) {
    if (to_string(p) == name) return p;
  }
  throw InputError("unknown provenance label: " + std::string(name));
}

namespace {

// num/den rounded to double. Both conversions to long double are exact for the
// power-of-two and small denominators used here and accurate to 2^-64 otherwise.
double ratio_to_double(Int num, Int den) {
  return static_cast<double>(to_long_double(num) / to_long_double(den));
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<Int> denominators, std::vector<Int> numerators,
                   Provenance label)
    : dim_(dim), denominators_(std::move(denominators)), numerators_(std::move(numerators)), label_(label) {
  if (dim_ == 0) throw InputError("point set dimension must be positive");
  if (denominators_.size() != dim_) throw InputError("need exactly one denominator per axis");
  if (numerators_.size() % dim_ != 0) throw InputError("numerator count is not a multiple of the dimension");
  for (Int den : denominators_) {
    if (den <= 0) throw InputError("denominators must be positive");
  }
  const std::size_t n = size();
  coords_.resize(numerators_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < dim_; ++a) {
      const Int num = numerators_[i * dim_ + a];
      const Int den = denominators_[a];
      if (num > den || num < -den) {
        throw InputError("point " + std::to_string(i) + " leaves [-1,1]^d on axis " + std::to_string(a));
      }
      coords_[i * dim_ + a] = ratio_to_double(num, den);
    }
  }
  // shared denominators make lexicographic numerator order a total order on points
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [this](std::size_t i) { return numerators_.begin() + static_cast<std::ptrdiff_t>(i * dim_); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(dim_), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(dim_));
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (std::equal(row(order[k - 1]), row(order[k - 1]) + static_cast<std::ptrdiff_t>(dim_), row(order[k]))) {
      throw InputError("duplicate point at indices " + std::to_string(order[k - 1]) + " and " +
                       std::to_string(order[k]));
    }
  }
}

std::string PointSet::coord_text(std::size_t point, std::size_t axis) const {
  return to_string(numerator(point, axis)) + "/" + to_string(denominator(axis));
}

}  // namespace ilab
