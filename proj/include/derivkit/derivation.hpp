#pragma once

// Derivations of Q[x1..xn], written as f1*d1 + ... + fn*dn.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/poly.hpp"
#include "derivkit/ratfunc.hpp"

namespace derivkit {

class Derivation {
 public:
  Derivation() = default;
  /// The zero derivation on `nvars` variables.
  explicit Derivation(std::size_t nvars);
  /// coeffs[i] is the coefficient of d/dx_{i+1}. Throws DimensionError if a
  /// coefficient lives in a different number of variables.
  explicit Derivation(std::vector<Poly> coeffs);

  /// d/dx_{i+1}.
  static Derivation partial(std::size_t nvars, std::size_t i);

  [[nodiscard]] std::size_t nvars() const { return coeffs_.size(); }
  [[nodiscard]] const std::vector<Poly>& coeffs() const { return coeffs_; }
  [[nodiscard]] const Poly& coeff(std::size_t i) const { return coeffs_.at(i); }
  [[nodiscard]] bool is_zero() const;

  /// sum_i coeffs[i] * df/dx_i.
  [[nodiscard]] Poly apply(const Poly& f) const;
  /// Quotient rule: D(p/q) = (D(p) q - p D(q)) / q^2.
  [[nodiscard]] RatFunc apply(const RatFunc& f) const;
  /// D^k(f).
  [[nodiscard]] Poly apply_power(const Poly& f, unsigned k) const;

  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const BigRat& c, const Derivation& d);
  /// The derivation f * D.
  friend Derivation operator*(const Poly& f, const Derivation& d);
  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  std::vector<Poly> coeffs_;
};

/// [D, T]: the derivation with i-th coefficient D(T(x_i)) - T(D(x_i)).
Derivation bracket(const Derivation& d, const Derivation& t);

/// D and T commute iff D(g_i) = T(f_i) for every i, where D = sum f_i d_i
/// and T = sum g_i d_i.
bool commutes(const Derivation& d, const Derivation& t);

/// Smallest k with D^k(f) != 0 and D^{k+1}(f) = 0. Returns -1 for f = 0 and
/// nullopt ("diverged") when D^bound(f) is still nonzero. Requires bound >= 1.
std::optional<int> d_order(const Derivation& d, const Poly& f, int bound);

/// Both readings of the index of a nonzero derivation: how many coefficients
/// are nonzero, and the zero-based position of the first nonzero one.
struct DerivationIndex {
  std::size_t count;
  std::size_t first;
};

/// Throws PreconditionError for the zero derivation.
DerivationIndex derivation_index(const Derivation& d);

/// A polynomial automorphism x_i -> images[i] together with a verified
/// inverse. Construction checks both compositions are the identity.
class PolyAutomorphism {
 public:
  PolyAutomorphism(std::vector<Poly> images, std::vector<Poly> inverse_images);

  static PolyAutomorphism identity(std::size_t nvars);

  [[nodiscard]] std::size_t nvars() const { return images_.size(); }
  [[nodiscard]] const std::vector<Poly>& images() const { return images_; }
  [[nodiscard]] const std::vector<Poly>& inverse_images() const { return inverse_images_; }

  /// phi(f) = f(images).
  [[nodiscard]] Poly apply(const Poly& f) const;
  /// phi^{-1}(f) = f(inverse_images).
  [[nodiscard]] Poly apply_inverse(const Poly& f) const;
  [[nodiscard]] PolyAutomorphism inverse() const;

 private:
  std::vector<Poly> images_;
  std::vector<Poly> inverse_images_;
};

/// phi^{-1} D phi, computed on generators: x_i -> phi^{-1}(D(phi(x_i))).
Derivation conjugate(const Derivation& d, const PolyAutomorphism& phi);

/// (sum_{i<k} g_i d_i, sum_{i>=k} g_i d_i); requires 1 <= k < n.
std::pair<Derivation, Derivation> split_components(const Derivation& t, std::size_t k);

/// "f1*d1 + ..." with variables x1..xn; "0" for the zero derivation.
std::string to_string(const Derivation& d);
std::ostream& operator<<(std::ostream& os, const Derivation& d);

}  // namespace derivkit
