#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

/// Subsets of F_q^d (q prime), their Fourier transforms and pair counts.
///
/// Cells are indexed by x = (x_1..x_d) -> sum_a x_a q^{d-1-a} (last axis fastest).
/// The transform is f^(m) = q^{-d} sum_x chi(-x.m) f(x) with chi(u) = exp(2 pi i u / q).
namespace ilab::ffield {

/// Largest q^d handled by the dense representations.
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 26;

bool is_prime(std::uint64_t q);

class FFSet {
 public:
  /// Empty set; throws ParameterError unless q is prime and dim >= 1, CapacityError past kMaxCells.
  FFSet(std::uint64_t q, std::uint32_t dim);

  std::uint64_t q() const noexcept { return q_; }
  std::uint32_t dim() const noexcept { return dim_; }
  std::uint64_t cells() const noexcept { return indicator_.size(); }
  std::uint64_t size() const noexcept { return members_.size(); }

  /// Adds x (coordinates reduced mod q); no-op if already present.
  void insert(std::span<const std::int64_t> x);
  void insert_index(std::uint64_t cell);
  bool contains(std::span<const std::int64_t> x) const;
  bool contains_index(std::uint64_t cell) const { return indicator_[cell] != 0; }

  std::uint64_t index_of(std::span<const std::int64_t> x) const;
  std::vector<std::int64_t> coords_of(std::uint64_t cell) const;

  /// Member cells in ascending order.
  std::vector<std::uint64_t> members() const;
  std::span<const std::uint8_t> indicator() const noexcept { return indicator_; }

 private:
  std::uint64_t q_;
  std::uint32_t dim_;
  std::vector<std::uint8_t> indicator_;
  std::vector<std::uint64_t> members_;  // insertion order
};

/// S_t = {x : x_1^2 + ... + x_d^2 = t}.
FFSet ff_sphere(std::uint64_t q, std::uint32_t dim, std::int64_t t);

enum class ParaboloidForm {
  standard,  ///< x_d = x_1^2 + ... + x_{d-1}^2
  literal,   ///< x_d = x_1^2 + ... + x_d^2
};

std::string_view to_string(ParaboloidForm form);

FFSet ff_paraboloid(std::uint64_t q, std::uint32_t dim, ParaboloidForm form = ParaboloidForm::standard);

struct FFSpectrum {
  std::uint64_t q = 0;
  std::uint32_t dim = 0;
  std::vector<std::complex<double>> values;
  double max_nonzero_mag = 0.0;

  std::complex<double> at(std::span<const std::int64_t> m) const;
  /// f(x) = sum_m chi(x.m) f^(m).
  std::complex<double> inverse_at(std::span<const std::int64_t> x) const;
  /// |sum_m |f^(m)|^2 - q^{-d} |E|| / (q^{-d} |E|); 0 for the empty set.
  double plancherel_defect(std::uint64_t set_size) const;
};

/// Axis-by-axis DFT, O(d q^{d+1}).
FFSpectrum ff_fourier(const FFSet& S);

enum class PairMethod { brute, fourier };

std::string_view to_string(PairMethod m);

struct PairCount {
  std::optional<std::uint64_t> exact;  ///< brute force only
  double value = 0.0;
  double imag = 0.0;  ///< residual imaginary part of the Fourier sum
};

/// #{(x, y) in E x E : x - y in Gamma}.
PairCount ff_pair_count(const FFSet& E, const FFSet& Gamma, PairMethod method);

struct SharpnessSet {
  FFSet E;
  std::uint64_t a_size;    ///< |A|, A = {0..floor(q^{1/2-delta})}
  std::uint64_t top_size;  ///< |A'|, A' = {0..floor((d-1) q^{1-2 delta})}
};

/// E = A^{d-1} x A'. ParameterError unless 0 < delta <= 1/4 and (d-1) q^{1-2 delta} < q.
SharpnessSet sharpness_set(std::uint64_t q, double delta, std::uint32_t dim);

struct SharpnessRatio {
  std::uint64_t q = 0;
  double delta = 0.0;
  std::uint32_t dim = 2;
  std::uint64_t a_size = 0;
  std::uint64_t top_size = 0;
  std::uint64_t set_size = 0;
  std::uint64_t pair_count = 0;
  double ratio = 0.0;  ///< pair_count * q / |E|^2
};

SharpnessRatio sharpness_ratio(std::uint64_t q, double delta, std::uint32_t dim);

}  // namespace ilab::ffield
