#pragma once

// Exact evaluation of the orientation cocycle and of the alternating cup
// product Theta_n over n circle factors.
//
//   Theta_n(p_0..p_2n) = 1/(2n+1)! * sum_sigma sign(sigma)
//                        * prod_i Or_i(p_sigma(2i-2), p_sigma(2i-1), p_sigma(2i))
//
// The pi^n volume scale is not part of these values; see bound.hpp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thnorm/kernel.hpp"
#include "thnorm/ordercomb.hpp"
#include "thnorm/rational.hpp"

namespace thnorm {

/// Orientation of three ranks taken from one rank vector: 0 on any tie,
/// otherwise the parity of the permutation sorting (a, b, c).
constexpr int or3(int a, int b, int c) noexcept {
  if (a == b || b == c || a == c) return 0;
  const int inversions = (a > b) + (a > c) + (b > c);
  return (inversions & 1) ? -1 : 1;
}

/// Largest n for which the factorial-sum oracle is allowed to run.
inline constexpr int kMaxDirectFactors = 6;

/// n circle factors over 2n+1 points; factor i holds the circular order of
/// the points in circle i. Optionally carries the rational angles in [0,1)
/// the ranks were derived from.
class Configuration {
 public:
  using Angles = std::vector<std::vector<Rational>>;

  explicit Configuration(std::vector<RankVector> factors);
  /// Angles must rank to exactly `factors`.
  Configuration(std::vector<RankVector> factors, Angles angles);

  static Configuration from_angles(Angles angles);

  int n() const noexcept { return static_cast<int>(factors_.size()); }
  std::size_t points() const noexcept { return factors_.front().size(); }
  const RankVector& factor(std::size_t i) const { return factors_.at(i); }
  std::span<const RankVector> factors() const noexcept { return factors_; }
  const std::optional<Angles>& angles() const noexcept { return angles_; }

  /// Point p of the result is point perm[p] of this configuration, in every factor.
  Configuration permuted_points(std::span<const int> perm) const;
  /// Factor i of the result is factor order[i] of this configuration.
  Configuration permuted_factors(std::span<const int> order) const;
  Configuration with_factor(std::size_t i, const RankVector& factor) const;

  /// "1,2,3,4,5|1,3,5,2,4"
  std::string to_string() const;

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<RankVector> factors_;
  std::optional<Angles> angles_;
};

/// Ranks of a list of rational angles in [0,1).
RankVector ranks_from_angles(std::span<const Rational> angles);

/// Ground truth: literal signed sum over all (2n+1)! permutations.
/// Throws BudgetError for n > kMaxDirectFactors.
Rational theta_direct(const Configuration& cfg);

/// Integer sum behind theta_direct: theta_direct = sum / (2n+1)!.
std::int64_t theta_direct_sum(const Configuration& cfg);

/// Reduced sum over reduced_perm_table(n), n in {2, 3}:
///   first factor reads (s0, s1, s2), the middle factor (s0, s3, s4),
///   the last factor (s4, s5, s6); the result is 4/(2n+1)! times the sum.
Rational theta_reduced(const Configuration& cfg);

/// Which triple of table positions a sign matrix reads.
enum class SignRole {
  first_factor,   // or3 at (s0, s1, s2)
  middle_factor,  // or3 at (s0, s3, s4)
  last_factor,    // or3 at (s4, s5, s6); n = 3 only
  combined_sign,  // sign(s) * or3 at (s0, s1, s2)
};

std::string to_string(SignRole role);

/// Table rows x class columns of entries in {-1, 0, +1}, stored column-major.
class SignMatrix {
 public:
  SignMatrix(SignRole role, std::size_t rows, std::size_t cols, std::vector<std::int8_t> data);

  SignRole role() const noexcept { return role_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int at(std::size_t row, std::size_t col) const noexcept { return data_[col * rows_ + row]; }
  std::span<const std::int8_t> column(std::size_t col) const noexcept { return {data_.data() + col * rows_, rows_}; }
  std::span<const std::int8_t> data() const noexcept { return data_; }

 private:
  SignRole role_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int8_t> data_;
};

/// Entry (l, j) is the Or value the role prescribes for table row l on class j.
SignMatrix build_sign_matrix(SignRole role, const PermTable& table, std::span<const RankVector> classes);

/// Combined-sign column for one x pattern.
std::vector<std::int8_t> combined_sign_vector(const PermTable& table, const XPattern& xp);

/// max over (i, j) of |O_ij|, O_ij = (1/rows) * sum_l s_l * Py(l, i) * Pz(l, j).
/// With options.symmetric, Py and Pz must come from one class list and only
/// the upper triangle is evaluated (O is symmetric by factor-swap invariance).
MaxResult bilinear_max(std::span<const std::int8_t> sign_vec, const SignMatrix& py, const SignMatrix& pz,
                       const KernelOptions& options = {});

/// max over i of |(1/rows) * sum_l s_l * Py(l, i)|; the n = 2 analogue. Cells carry col = 0.
MaxResult linear_max(std::span<const std::int8_t> sign_vec, const SignMatrix& py, const KernelOptions& options = {});

}  // namespace thnorm
