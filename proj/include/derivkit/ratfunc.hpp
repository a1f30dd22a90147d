#pragma once

#include <iosfwd>
#include <string>

#include "derivkit/poly.hpp"

namespace derivkit {

/// A fraction num/den of polynomials, kept unreduced.
///
/// There is no multivariate gcd; after every operation the integer content
/// and the common monomial factor are stripped, and the denominator is made
/// primitive with a positive leading coefficient. Equality and zero tests go
/// through cross-multiplication and the numerator respectively.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);
  /// Throws PreconditionError when `den` is zero.
  RatFunc(Poly num, Poly den);

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] std::size_t nvars() const { return num_.nvars(); }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  /// True when the denominator is a nonzero constant.
  [[nodiscard]] bool is_polynomial() const { return den_.is_constant(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  /// Throws PreconditionError on division by zero.
  RatFunc& operator/=(const RatFunc& o);
  [[nodiscard]] RatFunc operator-() const;

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  /// p/q == r/s iff p*s - r*q == 0.
  friend bool operator==(const RatFunc& a, const RatFunc& b);

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

std::string to_string(const RatFunc& f);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace derivkit
