#pragma once

// Linear derivations, matrix commutants, and the decomposition of a
// centralizing derivation over the field of constants.

#include <cstddef>
#include <optional>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/linalg.hpp"
#include "derivkit/ratfunc.hpp"

namespace derivkit {

/// Square rational matrix. Entry (i, j) is the coefficient of x_j in the
/// i-th coefficient of the associated linear derivation.
class MatrixQ {
 public:
  MatrixQ() = default;
  explicit MatrixQ(std::size_t n) : n_(n), entries_(n * n) {}

  static MatrixQ identity(std::size_t n);
  /// Lower-triangular Jordan block: eigenvalue on the diagonal, ones
  /// directly below it.
  static MatrixQ jordan_block(std::size_t n, const BigRat& eigenvalue);
  static MatrixQ diagonal(const std::vector<BigRat>& values);

  [[nodiscard]] std::size_t size() const { return n_; }
  BigRat& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const BigRat& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  [[nodiscard]] bool is_zero() const;

  MatrixQ& operator+=(const MatrixQ& o);
  MatrixQ& operator-=(const MatrixQ& o);
  friend MatrixQ operator+(MatrixQ a, const MatrixQ& b) { return a += b; }
  friend MatrixQ operator-(MatrixQ a, const MatrixQ& b) { return a -= b; }
  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
  friend MatrixQ operator*(const BigRat& c, MatrixQ a);
  friend bool operator==(const MatrixQ&, const MatrixQ&) = default;

  [[nodiscard]] MatrixQ pow(unsigned k) const;

 private:
  std::size_t n_ = 0;
  std::vector<BigRat> entries_;
};

/// sum_{i,j} a_ij x_j d_i.
Derivation linear_derivation(const MatrixQ& a);

/// Basis of {B : AB = BA}, from the exact null space of B -> AB - BA.
struct CommutantBasis {
  std::vector<MatrixQ> matrices;
};
CommutantBasis matrix_commutant(const MatrixQ& a);

/// Embedded nilpotent Jordan block J_len(0) on positions [start, start+len).
MatrixQ nilpotent_block(std::size_t n, std::size_t start, std::size_t len);

/// V^(k) = x1 d_{k+1} + x2 d_{k+2} + ... + x_{n-k} d_n for k = 0..n-1, the
/// linear derivations of the powers of J_n(0).
std::vector<Derivation> nilpotent_power_derivations(std::size_t n);

/// One diagonal block of a lower-triangular Jordan form.
struct JordanBlock {
  std::size_t start;
  std::size_t size;
  BigRat eigenvalue;
};

/// The block structure of `a` if it is already a direct sum of
/// lower-triangular Jordan blocks; nullopt otherwise.
std::optional<std::vector<JordanBlock>> jordan_structure(const MatrixQ& a);

/// T written as sum_j coefficients[j] * linear_derivation(basis[j]) with
/// every coefficient annihilated by D = linear_derivation(A).
struct FDecomposition {
  Derivation target;
  std::vector<MatrixQ> basis;
  std::vector<RatFunc> coefficients;
};

/// Decomposes a derivation commuting with the linear derivation of `a`.
///
/// When `a` is in lower-triangular Jordan form each block is peeled in turn:
/// with r the first nonzero position g_r of the block, g_r / x_first is a
/// constant of D and is subtracted against the block's nilpotent power that
/// starts at r; the first nonzero position strictly increases. The basis is
/// then the list of block nilpotent powers (for J_n(0) exactly V^(0..n-1)).
///
/// Any other matrix goes through a fraction-free solve over Q(x) against
/// matrix_commutant(a), with free unknowns set to zero.
///
/// Throws PreconditionError if `t` does not commute, and
/// InternalInconsistency if the solve fails or a coefficient is not
/// D-constant.
FDecomposition decompose_over_constants(const Derivation& t, const MatrixQ& a);

/// Coefficientwise sum_j phi_j * linear_derivation(B_j), as fractions.
std::vector<RatFunc> recombine(const FDecomposition& dec);

/// True iff every basis matrix commutes with D, every coefficient is
/// D-constant (quotient-rule numerator is zero) and the recombination equals
/// the target after clearing denominators.
bool verify_constant_multiple_membership(const FDecomposition& dec, const Derivation& d);

/// The numerator of D(phi) is the zero polynomial.
bool is_constant_of(const Derivation& d, const RatFunc& phi);

}  // namespace derivkit
