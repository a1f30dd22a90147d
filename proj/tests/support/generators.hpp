#pragma once

// Seeded random inputs for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/poly.hpp"
#include "derivkit/weitzenboeck.hpp"

namespace derivkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  /// Small nonzero rational p/q.
  BigRat rational() {
    std::int64_t p = 0;
    while (p == 0) p = integer(-9, 9);
    BigRat r(static_cast<long>(p), static_cast<unsigned long>(integer(1, 4)));
    r.canonicalize();
    return r;
  }

  Monomial monomial(std::size_t n, unsigned max_degree) {
    std::vector<std::uint32_t> e(n, 0);
    const auto deg = static_cast<unsigned>(integer(0, max_degree));
    for (unsigned k = 0; k < deg; ++k) ++e[static_cast<std::size_t>(integer(0, n - 1))];
    return Monomial(std::move(e));
  }

  Poly poly(std::size_t n, unsigned max_degree, unsigned max_terms = 4) {
    Poly p(n);
    const auto terms = integer(0, max_terms);
    for (std::int64_t k = 0; k < terms; ++k) p.add_term(monomial(n, max_degree), rational());
    return p;
  }

  Poly nonzero_poly(std::size_t n, unsigned max_degree, unsigned max_terms = 4) {
    Poly p(n);
    while (p.is_zero()) p = poly(n, max_degree, max_terms);
    return p;
  }

  /// Random isobaric polynomial: terms sharing the weight of a seed monomial
  /// and its degree.
  Poly isobaric_poly(std::size_t n, unsigned max_degree) {
    const Monomial seed = monomial(n, max_degree);
    const auto w = weight(seed);
    Poly p = Poly::term(seed, rational());
    for (const auto& m : monomials_of_degree(n, static_cast<unsigned>(seed.degree()))) {
      if (m != seed && weight(m) == w && integer(0, 2) == 0) p.add_term(m, rational());
    }
    return p;
  }

  Derivation derivation(std::size_t n, unsigned max_degree, unsigned max_terms = 3) {
    std::vector<Poly> coeffs;
    for (std::size_t i = 0; i < n; ++i) coeffs.push_back(poly(n, max_degree, max_terms));
    return Derivation(std::move(coeffs));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace derivkit::testing
