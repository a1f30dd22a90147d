#include "derivkit/linalg.hpp"

#include <limits>

#include "derivkit/errors.hpp"

namespace derivkit {

void QMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

RowEchelon row_reduce(QMatrix m) {
  RowEchelon out;
  std::size_t row = 0;
  BigRat factor;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(row, pivot);
    const BigRat inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= factor * m(row, c);
      }
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t matrix_rank(QMatrix m) { return row_reduce(std::move(m)).rank(); }

std::vector<std::vector<BigRat>> null_space(const QMatrix& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<BigRat>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRat> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ech.rank(); ++r) {
      v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<BigRat>> reduced_row_basis(const std::vector<std::vector<BigRat>>& rows,
                                                   std::size_t width) {
  QMatrix m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw DimensionError("reduced_row_basis: ragged rows");
    for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
  }
  const auto ech = row_reduce(std::move(m));
  std::vector<std::vector<BigRat>> out(ech.rank(), std::vector<BigRat>(width));
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    for (std::size_t c = 0; c < width; ++c) out[r][c] = ech.reduced(r, c);
  }
  return out;
}

namespace {

// Divides a row by the rational content and the monomial content shared by
// all of its entries.
void strip_row(std::vector<Poly>& row) {
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  std::optional<Monomial> common;
  for (const auto& p : row) {
    if (p.is_zero()) continue;
    const BigRat c = p.content();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    const Monomial mc = p.monomial_content();
    common = common ? monomial_gcd(*common, mc) : mc;
  }
  if (num_gcd == 0) return;
  BigRat scale(den_lcm, num_gcd);
  scale.canonicalize();
  const bool divide = common && common->degree() > 0;
  for (auto& p : row) {
    if (p.is_zero()) continue;
    p *= scale;
    if (divide) p = p.divide_by_monomial(*common);
  }
}

struct Pivot {
  std::size_t row;
  std::size_t col;
};

std::optional<Pivot> choose_pivot(const std::vector<std::vector<Poly>>& m,
                                  const std::vector<bool>& row_used, std::size_t ncols) {
  std::optional<Pivot> best;
  std::int64_t best_deg = std::numeric_limits<std::int64_t>::max();
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (row_used[r] || m[r][c].is_zero()) continue;
      const auto d = m[r][c].degree();
      if (d < best_deg) {
        best_deg = d;
        best = Pivot{r, c};
      }
    }
  }
  return best;
}

// Fraction-free Gauss-Jordan on the first `ncols` columns; trailing columns
// (a right-hand side) are carried along. Returns the pivots in order.
std::vector<Pivot> eliminate(std::vector<std::vector<Poly>>& m, std::size_t ncols,
                             bool jordan) {
  std::vector<bool> row_used(m.size(), false);
  std::vector<Pivot> pivots;
  while (auto pivot = choose_pivot(m, row_used, ncols)) {
    row_used[pivot->row] = true;
    const Poly p = m[pivot->row][pivot->col];
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == pivot->row || m[r][pivot->col].is_zero()) continue;
      if (!jordan && row_used[r]) continue;
      const Poly a = m[r][pivot->col];
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        Poly updated = p * m[r][c];
        if (!m[pivot->row][c].is_zero()) updated -= a * m[pivot->row][c];
        m[r][c] = std::move(updated);
      }
      strip_row(m[r]);
    }
    pivots.push_back(*pivot);
  }
  return pivots;
}

void check_shape(const std::vector<std::vector<Poly>>& rows, std::size_t width,
                 std::size_t nvars) {
  for (const auto& row : rows) {
    if (row.size() != width) throw DimensionError("polynomial matrix: ragged rows");
    for (const auto& p : row) {
      if (p.nvars() != nvars) throw DimensionError("polynomial matrix: nvars mismatch");
    }
  }
}

}  // namespace

std::size_t fraction_free_rank(std::vector<std::vector<Poly>> rows, std::size_t nvars) {
  if (rows.empty()) return 0;
  const std::size_t width = rows[0].size();
  check_shape(rows, width, nvars);
  return eliminate(rows, width, false).size();
}

std::optional<std::vector<RatFunc>> solve_fraction_free(std::vector<std::vector<Poly>> a,
                                                        std::vector<Poly> b, std::size_t nvars) {
  if (a.size() != b.size()) throw DimensionError("solve_fraction_free: row count mismatch");
  const std::size_t ncols = a.empty() ? 0 : a[0].size();
  check_shape(a, ncols, nvars);
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (b[r].nvars() != nvars) throw DimensionError("solve_fraction_free: nvars mismatch");
    a[r].push_back(std::move(b[r]));
  }
  const auto pivots = eliminate(a, ncols, true);

  std::vector<bool> row_used(a.size(), false);
  for (const auto& pv : pivots) row_used[pv.row] = true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (!row_used[r] && !a[r][ncols].is_zero()) return std::nullopt;
  }

  std::vector<RatFunc> x(ncols, RatFunc(Poly(nvars)));
  for (const auto& pv : pivots) {
    x[pv.col] = RatFunc(a[pv.row][ncols], a[pv.row][pv.col]);
  }
  return x;
}

}  // namespace derivkit
