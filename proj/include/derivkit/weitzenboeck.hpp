#pragma once

// The basic Weitzenboeck derivation D = x1 d2 + ... + x_{n-1} dn, its sl2
// triple, the weight grading, and the construction of module generators for
// Ker D^i and for the centralizer of D.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "derivkit/derivation.hpp"

namespace derivkit {

/// x1 d2 + x2 d3 + ... + x_{n-1} dn (the zero derivation for n = 1).
Derivation weitzenboeck_derivation(std::size_t n);

/// D raises weight by two, lowering (D^) lowers it by two, and cartan (H)
/// acts on x_i by (n - 2i + 1). [D, D^] = H, [H, D] = 2D, [H, D^] = -2D^.
struct Sl2Triple {
  std::size_t n;
  Derivation raising;
  Derivation lowering;
  Derivation cartan;
};

/// D^(x_i) = i(n-i) x_{i+1}, H(x_i) = (n-2i+1) x_i (one-based i).
/// Throws PreconditionError for n < 2.
Sl2Triple build_sl2(std::size_t n);

/// H-eigenvalue of a monomial: n * deg - sum_i (2i-1) alpha_i.
std::int64_t weight(const Monomial& m);

/// The common weight of an isobaric nonzero polynomial; nullopt otherwise.
std::optional<std::int64_t> isobaric_weight(const Poly& f);

/// f split into isobaric parts, one per weight, in decreasing weight order.
/// The zero polynomial yields no components.
std::vector<std::pair<std::int64_t, Poly>> isobaric_components(const Poly& f);

/// D_f = D^{n-1}(f) d1 + D^{n-2}(f) d2 + ... + f dn, which commutes with D.
/// Throws PreconditionError when the D-order of f exceeds n - 1.
Derivation centralizing_derivation(const Poly& f);

/// One factor D^^power(a_generator) of a product in S_i (zero-based index).
struct FactorPower {
  std::size_t generator;
  unsigned power;
  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

struct GeneratorElement {
  Poly poly;                          ///< primitive part of the product
  std::vector<FactorPower> factors;   ///< empty for the constant 1
};

/// S_level: products of D^^{k_j}(a_{i_j}) with k_j >= 1 and
/// sum k_j <= level - 1, the empty product being 1. Factors with
/// D^^k(a) = 0 are dropped, elements are reduced to primitive parts and
/// deduplicated, and the result is sorted by total degree, then by leading
/// monomial (largest first).
struct GeneratorSet {
  std::size_t n;
  std::size_t level;
  std::vector<GeneratorElement> elements;
};

/// Throws PreconditionError for level < 1, an empty generator list, or
/// generators in different numbers of variables.
GeneratorSet build_generator_set(std::size_t level, std::span<const Poly> kernel_generators);

struct CentralizerGenerator {
  GeneratorElement source;
  Derivation derivation;
};

/// {D_s : s in S_n}. Every s is checked to satisfy D^n(s) = 0; a failure
/// raises RegistryError naming the offending element.
std::vector<CentralizerGenerator> centralizer_generators(std::span<const Poly> kernel_generators);

}  // namespace derivkit
