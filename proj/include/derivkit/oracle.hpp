#pragma once

// Brute-force verification engines. Everything here works on the finite
// dimensional space of polynomials (or derivations) of bounded degree and
// reduces each question to exact Gaussian elimination over Q, independent of
// the constructive code in weitzenboeck.hpp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/weitzenboeck.hpp"

namespace derivkit {

/// Largest number of monomials (or derivation basis elements) any oracle
/// will place in a single matrix.
inline constexpr std::size_t kMonomialGuard = 20000;

/// Default truncation degree for n variables: 6 up to n = 4, 4 for n = 5,
/// 3 beyond.
unsigned default_oracle_degree(std::size_t n);

/// A basis of a subspace of polynomials of degree <= degree_cap. Vectors are
/// in reduced row-echelon form with columns in descending graded-lex order,
/// so each vector has leading coefficient one and no other vector contains
/// its leading monomial.
struct GradedBasis {
  std::size_t nvars;
  unsigned degree_cap;
  std::vector<Poly> vectors;
};

/// Basis of {f : deg f <= degree, D^power(f) = 0} via the null space of the
/// matrix of D^power on the monomial basis. Requires power >= 1.
GradedBasis kernel_power_basis(const Derivation& d, unsigned power, unsigned degree);

/// Reduces a list of polynomials to an RREF basis of their span.
GradedBasis span_basis(std::span<const Poly> polys, std::size_t nvars, unsigned degree_cap);

/// True iff every polynomial of `inner` lies in span_Q(outer).
bool span_contains(std::span<const Poly> outer, std::span<const Poly> inner);

struct WitnessTerm {
  std::vector<unsigned> multiplier;  ///< exponents of the kernel generators
  std::size_t element;               ///< index into the generator set
  BigRat coeff;
};

struct SpanCertificate {
  bool contained = false;
  std::size_t spanning_size = 0;
  /// One witness combination per target vector when contained.
  std::vector<std::vector<WitnessTerm>> witnesses;
  /// First target vector outside the span when not contained.
  std::optional<Poly> first_failure;
};

/// Checks every target vector lies in span_Q{ c*s : s in S, c a monomial in
/// the kernel generators, deg(c*s) <= degree }.
SpanCertificate module_span_check(const GeneratorSet& s, std::span<const Poly> kernel_generators,
                                  const GradedBasis& target, unsigned degree);

/// Basis of {T : every coefficient of T has degree <= degree, [T, D] = 0}.
std::vector<Derivation> centralizer_truncated(const Derivation& d, unsigned degree);

/// Rank of the span of derivations as Q-vectors (not over the fractions).
std::size_t derivation_span_rank(std::span<const Derivation> ds);

struct RankOptions {
  std::uint64_t seed = 1;
  std::int64_t bound = 1000000;   ///< coordinates drawn from [-bound, bound]
  unsigned retry_budget = 4;      ///< extra sample pairs before going symbolic
  bool force_symbolic = false;
};

struct RankResult {
  std::size_t rank = 0;
  std::string method;                  ///< "sampled" or "symbolic"
  std::vector<std::size_t> samples;    ///< rank at each evaluation point
};

/// Rank over Frac(A) of the n x m coefficient matrix of the derivations.
/// Accepts a sampled rank once two independent evaluation points agree;
/// otherwise samples up to retry_budget more pairs and, if they never agree,
/// falls back to fraction-free elimination over Q[x].
RankResult rank_over_fractions(std::span<const Derivation> ts, const RankOptions& options = {});

/// Greedy low-degree isobaric generators of Ker D ∩ A_{<=degree} for the
/// basic Weitzenboeck derivation in n variables, checked afterwards with
/// module_span_check for S_1..S_n at `degree`. The list is a candidate
/// generating set, not a certified one. Requires n <= 6 and a degree within
/// default_oracle_degree(n).
std::vector<Poly> kernel_generator_candidates(std::size_t n, unsigned degree);

}  // namespace derivkit
