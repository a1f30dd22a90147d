#pragma once

// Exact linear algebra over Q, plus fraction-free elimination over Q[x].

#include <cstddef>
#include <optional>
#include <vector>

#include "derivkit/poly.hpp"
#include "derivkit/ratfunc.hpp"

namespace derivkit {

/// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  BigRat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigRat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRat> data_;
};

struct RowEchelon {
  QMatrix reduced;                       ///< reduced row-echelon form
  std::vector<std::size_t> pivot_cols;   ///< pivot column of row r, r < rank
  [[nodiscard]] std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination; the pivot of each row is its first nonzero
/// column, and pivots are scaled to one.
RowEchelon row_reduce(QMatrix m);

std::size_t matrix_rank(QMatrix m);

/// Basis of {v : m v = 0}, one vector per free column, in RREF-normalized
/// form (the free coordinate is one, other free coordinates zero).
std::vector<std::vector<BigRat>> null_space(const QMatrix& m);

/// Row-reduces a list of vectors and returns the nonzero rows of the RREF.
std::vector<std::vector<BigRat>> reduced_row_basis(const std::vector<std::vector<BigRat>>& rows,
                                                   std::size_t width);

/// Rank of a matrix with polynomial entries over the fraction field, by
/// fraction-free elimination. Entries all share `nvars`.
std::size_t fraction_free_rank(std::vector<std::vector<Poly>> rows, std::size_t nvars);

/// Solves A x = b over Q(x1..xn) by fraction-free Gauss-Jordan elimination.
/// Pivot: the nonzero entry of least total degree, ties broken by lowest
/// column, then lowest row. Free unknowns are set to zero. Returns nullopt
/// when the system is inconsistent.
std::optional<std::vector<RatFunc>> solve_fraction_free(std::vector<std::vector<Poly>> a,
                                                        std::vector<Poly> b, std::size_t nvars);

}  // namespace derivkit
