#include "derivkit/linear.hpp"

#include <sstream>

#include "derivkit/errors.hpp"

namespace derivkit {

namespace {

// The k-th power of the nilpotent part of a Jordan block, as an n x n matrix
// supported on the block: x_{start+j} feeds coefficient start+k+j.
MatrixQ block_power(std::size_t n, std::size_t start, std::size_t len, std::size_t k) {
  MatrixQ m(n);
  for (std::size_t j = 0; j + k < len; ++j) m(start + k + j, start + j) = 1;
  return m;
}

}  // namespace

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixQ MatrixQ::jordan_block(std::size_t n, const BigRat& eigenvalue) {
  MatrixQ m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = eigenvalue;
    if (i > 0) m(i, i - 1) = 1;
  }
  return m;
}

MatrixQ MatrixQ::diagonal(const std::vector<BigRat>& values) {
  MatrixQ m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

bool MatrixQ::is_zero() const {
  for (const auto& e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

MatrixQ& MatrixQ::operator+=(const MatrixQ& o) {
  if (o.n_ != n_) throw DimensionError("matrix add: size mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

MatrixQ& MatrixQ::operator-=(const MatrixQ& o) {
  if (o.n_ != n_) throw DimensionError("matrix sub: size mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  if (a.n_ != b.n_) throw DimensionError("matrix mul: size mismatch");
  MatrixQ out(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

MatrixQ operator*(const BigRat& c, MatrixQ a) {
  for (auto& e : a.entries_) e *= c;
  return a;
}

MatrixQ MatrixQ::pow(unsigned k) const {
  MatrixQ out = identity(n_);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Derivation linear_derivation(const MatrixQ& a) {
  const std::size_t n = a.size();
  std::vector<Poly> coeffs(n, Poly(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) coeffs[i].add_term(Monomial::variable(n, j), a(i, j));
    }
  }
  return Derivation(std::move(coeffs));
}

CommutantBasis matrix_commutant(const MatrixQ& a) {
  const std::size_t n = a.size();
  // unknown b_kl sits at column k*n + l; equation (AB - BA)_ij at row i*n + j
  QMatrix system(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        system(row, k * n + j) += a(i, k);
        system(row, i * n + k) -= a(k, j);
      }
    }
  }
  CommutantBasis out;
  for (const auto& v : null_space(system)) {
    MatrixQ b(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) b(k, l) = v[k * n + l];
    }
    out.matrices.push_back(std::move(b));
  }
  return out;
}

MatrixQ nilpotent_block(std::size_t n, std::size_t start, std::size_t len) {
  if (start + len > n) throw IndexError("nilpotent_block: block exceeds matrix");
  return block_power(n, start, len, 1);
}

std::vector<Derivation> nilpotent_power_derivations(std::size_t n) {
  std::vector<Derivation> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(linear_derivation(block_power(n, 0, n, k)));
  return out;
}

std::optional<std::vector<JordanBlock>> jordan_structure(const MatrixQ& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && j + 1 != i && a(i, j) != 0) return std::nullopt;
    }
  }
  std::vector<JordanBlock> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    const bool continues = i > 0 && a(i, i - 1) != 0;
    if (continues) {
      if (a(i, i - 1) != 1 || a(i, i) != a(i - 1, i - 1)) return std::nullopt;
      ++blocks.back().size;
    } else {
      blocks.push_back(JordanBlock{i, 1, a(i, i)});
    }
  }
  return blocks;
}

bool is_constant_of(const Derivation& d, const RatFunc& phi) {
  const Poly& p = phi.num();
  const Poly& q = phi.den();
  return d.apply(p) * q == p * d.apply(q);
}

FDecomposition decompose_over_constants(const Derivation& t, const MatrixQ& a) {
  const std::size_t n = a.size();
  if (t.nvars() != n) throw DimensionError("decompose: derivation/matrix size mismatch");
  const Derivation d = linear_derivation(a);
  if (!commutes(d, t)) {
    throw PreconditionError("decompose: derivation does not commute with the linear derivation");
  }

  FDecomposition dec{t, {}, {}};
  const Poly zero(n);

  if (auto blocks = jordan_structure(a)) {
    for (const auto& block : *blocks) {
      const std::size_t first_basis = dec.basis.size();
      for (std::size_t k = 0; k < block.size; ++k) {
        dec.basis.push_back(block_power(n, block.start, block.size, k));
        dec.coefficients.emplace_back(zero);
      }
      std::vector<RatFunc> h;
      for (std::size_t s = 0; s < block.size; ++s) h.emplace_back(t.coeff(block.start + s));
      const RatFunc lead_var(Poly::variable(n, block.start));

      std::size_t r = 0;
      while (true) {
        while (r < block.size && h[r].is_zero()) ++r;
        if (r == block.size) break;
        RatFunc phi = h[r] / lead_var;
        if (!is_constant_of(d, phi)) {
          throw InternalInconsistency("decompose: peeled coefficient " + to_string(phi) +
                                      " is not a constant of D");
        }
        for (std::size_t j = 0; r + j < block.size; ++j) {
          h[r + j] -= phi * RatFunc(Poly::variable(n, block.start + j));
        }
        dec.coefficients[first_basis + r] = std::move(phi);
        if (!h[r].is_zero()) throw InternalInconsistency("decompose: peeling did not clear");
      }
    }
    return dec;
  }

  dec.basis = matrix_commutant(a).matrices;
  std::vector<std::vector<Poly>> system(n);
  std::vector<Poly> rhs(t.coeffs());
  for (const auto& b : dec.basis) {
    const Derivation v = linear_derivation(b);
    for (std::size_t i = 0; i < n; ++i) system[i].push_back(v.coeff(i));
  }
  auto solution = solve_fraction_free(std::move(system), std::move(rhs), n);
  if (!solution) {
    throw InternalInconsistency("decompose: linear system over Q(x) is inconsistent");
  }
  for (const auto& phi : *solution) {
    if (!is_constant_of(d, phi)) {
      throw InternalInconsistency("decompose: solved coefficient " + to_string(phi) +
                                  " is not a constant of D");
    }
  }
  dec.coefficients = std::move(*solution);
  return dec;
}

std::vector<RatFunc> recombine(const FDecomposition& dec) {
  const std::size_t n = dec.target.nvars();
  if (dec.basis.size() != dec.coefficients.size()) {
    throw DimensionError("recombine: basis/coefficient count mismatch");
  }
  std::vector<RatFunc> out(n, RatFunc(Poly(n)));
  for (std::size_t j = 0; j < dec.basis.size(); ++j) {
    if (dec.coefficients[j].is_zero()) continue;
    const Derivation v = linear_derivation(dec.basis[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!v.coeff(i).is_zero()) out[i] += dec.coefficients[j] * RatFunc(v.coeff(i));
    }
  }
  return out;
}

bool verify_constant_multiple_membership(const FDecomposition& dec, const Derivation& d) {
  if (dec.basis.size() != dec.coefficients.size()) return false;
  if (d.nvars() != dec.target.nvars()) return false;
  for (const auto& b : dec.basis) {
    if (b.size() != d.nvars() || !commutes(d, linear_derivation(b))) return false;
  }
  for (const auto& phi : dec.coefficients) {
    if (phi.nvars() != d.nvars() || !is_constant_of(d, phi)) return false;
  }
  const auto combined = recombine(dec);
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    if (!(combined[i] == RatFunc(dec.target.coeff(i)))) return false;
  }
  return true;
}

}  // namespace derivkit
