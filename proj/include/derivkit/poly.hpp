#pragma once

// Sparse multivariate polynomials over the rationals.
//
// A Poly stores a map from Monomial to a nonzero BigRat, ordered by the
// graded-lexicographic order with x1 > x2 > ... > xn. Zero coefficients are
// never stored, so structural equality is mathematical equality.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace derivkit {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
BigRat parse_rational(const std::string& text);

/// Canonical "p/q" text, or "p" when the denominator is one.
std::string format_rational(const BigRat& value);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exps_(std::move(exponents)) {}

  static Monomial variable(std::size_t nvars, std::size_t i);

  [[nodiscard]] std::size_t nvars() const { return exps_.size(); }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  [[nodiscard]] std::span<const std::uint32_t> exponents() const { return exps_; }
  [[nodiscard]] std::uint64_t degree() const;

  /// Exponent-wise sum. Throws DimensionError on nvars mismatch.
  [[nodiscard]] Monomial operator*(const Monomial& other) const;
  /// True when every exponent of `other` is <= the matching exponent here.
  [[nodiscard]] bool divisible_by(const Monomial& other) const;
  /// Exponent-wise difference; requires divisible_by(other).
  [[nodiscard]] Monomial divided_by(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded-lexicographic strict order: lower total degree first, then
/// lexicographic with x1 most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exponent-wise minimum, i.e. the monomial gcd.
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// Upper bound on the total degree of any constructed polynomial.
/// Defaults to 64; exceeding it raises ResourceError.
std::uint32_t degree_cap();
void set_degree_cap(std::uint32_t cap);

/// Restores the previous degree cap on scope exit.
class DegreeCapScope {
 public:
  explicit DegreeCapScope(std::uint32_t cap);
  ~DegreeCapScope();
  DegreeCapScope(const DegreeCapScope&) = delete;
  DegreeCapScope& operator=(const DegreeCapScope&) = delete;

 private:
  std::uint32_t saved_;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, BigRat, GrlexLess>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const BigRat& c);
  /// The variable x_{i+1} (indices are zero-based).
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly term(const Monomial& m, const BigRat& c);

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] std::int64_t degree() const;
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] BigRat coefficient(const Monomial& m) const;

  /// Largest monomial in graded-lex order. Throws on zero.
  [[nodiscard]] const Monomial& leading_monomial() const;
  [[nodiscard]] const BigRat& leading_coefficient() const;

  /// Positive rational c with f / c having coprime integer coefficients.
  [[nodiscard]] BigRat content() const;
  /// f / content, sign-normalized so the leading coefficient is positive.
  [[nodiscard]] Poly primitive_part() const;
  /// Largest monomial dividing every term; the constant monomial for zero.
  [[nodiscard]] Monomial monomial_content() const;
  /// Exact division by a monomial that divides every term.
  [[nodiscard]] Poly divide_by_monomial(const Monomial& m) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const BigRat& c);
  [[nodiscard]] Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const BigRat& c) { return a *= c; }
  friend Poly operator*(const BigRat& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Exact partial derivative with respect to x_{i+1}.
  [[nodiscard]] Poly partial(std::size_t i) const;
  /// f(images[0], ..., images[n-1]).
  [[nodiscard]] Poly substitute(std::span<const Poly> images) const;
  [[nodiscard]] BigRat evaluate(std::span<const BigRat> point) const;
  [[nodiscard]] Poly pow(unsigned k) const;

  /// Adds c * m in place; drops the term if the result is zero.
  void add_term(const Monomial& m, const BigRat& c);

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Text form with variables x1..xn and exact fractions, leading term first.
std::string to_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Every monomial in `nvars` variables of total degree exactly `degree`,
/// in descending graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);
/// Every monomial of total degree <= `degree`, descending graded-lex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree);

}  // namespace derivkit
