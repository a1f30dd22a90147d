#include <gtest/gtest.h>

#include "derivkit/errors.hpp"
#include "derivkit/linear.hpp"
#include "derivkit/oracle.hpp"
#include "derivkit/weitzenboeck.hpp"
#include "generators.hpp"

namespace derivkit {
namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

MatrixQ block_sum(const std::vector<MatrixQ>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  MatrixQ out(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out(off + i, off + j) = b(i, j);
    }
    off += b.size();
  }
  return out;
}

TEST(LinearDerivation, Examples) {
  EXPECT_EQ(linear_derivation(MatrixQ::jordan_block(3, 0)), weitzenboeck_derivation(3));
  const std::size_t n = 3;
  EXPECT_EQ(linear_derivation(MatrixQ::identity(n)),
            Derivation({x(n, 0), x(n, 1), x(n, 2)}));
  EXPECT_TRUE(linear_derivation(MatrixQ(n)).is_zero());
}

TEST(Commutant, Dimensions) {
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(matrix_commutant(MatrixQ::jordan_block(n, 0)).matrices.size(), n) << n;
  }
  const auto diag = matrix_commutant(MatrixQ::diagonal({BigRat(1), BigRat(2)}));
  ASSERT_EQ(diag.matrices.size(), 2U);
  for (const auto& b : diag.matrices) {
    EXPECT_EQ(b(0, 1), 0);
    EXPECT_EQ(b(1, 0), 0);
  }
  EXPECT_EQ(matrix_commutant(MatrixQ(3)).matrices.size(), 9U);
}

TEST(Commutant, NilpotentPowersSpanTheCommutant) {
  const std::size_t n = 4;
  const auto comm = matrix_commutant(MatrixQ::jordan_block(n, 0));
  const auto powers = nilpotent_power_derivations(n);
  std::vector<Derivation> from_comm;
  for (const auto& b : comm.matrices) from_comm.push_back(linear_derivation(b));
  std::vector<Derivation> joint = from_comm;
  joint.insert(joint.end(), powers.begin(), powers.end());
  EXPECT_EQ(derivation_span_rank(from_comm), n);
  EXPECT_EQ(derivation_span_rank(joint), n);
}

TEST(NilpotentPowers, Examples) {
  const std::size_t n = 3;
  const auto v = nilpotent_power_derivations(n);
  ASSERT_EQ(v.size(), 3U);
  EXPECT_EQ(v[0], Derivation({x(n, 0), x(n, 1), x(n, 2)}));
  EXPECT_EQ(v[1], weitzenboeck_derivation(n));
  EXPECT_EQ(v[2], Derivation({Poly(n), Poly(n), x(n, 0)}));
}

TEST(JordanStructure, RecognisesBlocks) {
  const auto a = block_sum({MatrixQ::jordan_block(2, 3), MatrixQ::jordan_block(1, 0)});
  const auto s = jordan_structure(a);
  ASSERT_TRUE(s.has_value());
  ASSERT_EQ(s->size(), 2U);
  EXPECT_EQ((*s)[0].size, 2U);
  EXPECT_EQ((*s)[0].eigenvalue, 3);
  EXPECT_EQ((*s)[1].start, 2U);
  MatrixQ b = MatrixQ::jordan_block(3, 0);
  b(0, 2) = 1;
  EXPECT_FALSE(jordan_structure(b).has_value());
}

TEST(Decompose, WeitzenboeckItself) {
  const auto a = MatrixQ::jordan_block(3, 0);
  const auto dec = decompose_over_constants(weitzenboeck_derivation(3), a);
  ASSERT_EQ(dec.coefficients.size(), 3U);
  EXPECT_TRUE(dec.coefficients[0].is_zero());
  EXPECT_TRUE(dec.coefficients[1] == RatFunc(Poly::constant(3, BigRat(1))));
  EXPECT_TRUE(dec.coefficients[2].is_zero());
}

// Frozen values for 8x1^2 d1 + 8x1x2 d2 + 4x2^2 d3, checked below by an
// independent recombination with the quotient rule.
TEST(Decompose, QuadraticGenerator) {
  const std::size_t n = 3;
  const Derivation t({BigRat(8) * x(n, 0) * x(n, 0), BigRat(8) * x(n, 0) * x(n, 1),
                      BigRat(4) * x(n, 1) * x(n, 1)});
  const auto dec = decompose_over_constants(t, MatrixQ::jordan_block(n, 0));
  ASSERT_EQ(dec.coefficients.size(), 3U);
  const RatFunc phi0(BigRat(8) * x(n, 0));
  const RatFunc phi1{Poly(n)};
  const RatFunc phi2(BigRat(4) * x(n, 1) * x(n, 1) - BigRat(8) * x(n, 0) * x(n, 2), x(n, 0));
  EXPECT_TRUE(dec.coefficients[0] == phi0) << to_string(dec.coefficients[0]);
  EXPECT_TRUE(dec.coefficients[1] == phi1) << to_string(dec.coefficients[1]);
  EXPECT_TRUE(dec.coefficients[2] == phi2) << to_string(dec.coefficients[2]);

  const auto d = weitzenboeck_derivation(n);
  const auto v = nilpotent_power_derivations(n);
  const std::vector<RatFunc> phis{phi0, phi1, phi2};
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc sum{Poly(n)};
    for (std::size_t k = 0; k < n; ++k) sum += phis[k] * RatFunc(v[k].coeff(i));
    EXPECT_TRUE(sum == RatFunc(t.coeff(i)));
  }
  for (const auto& phi : phis) EXPECT_TRUE(d.apply(phi).is_zero());
  EXPECT_TRUE(verify_constant_multiple_membership(dec, d));
}

TEST(Decompose, RejectsNonCommuting) {
  EXPECT_THROW((void)decompose_over_constants(Derivation::partial(3, 0), MatrixQ::jordan_block(3, 0)),
               PreconditionError);
}

TEST(VerifyMembership, Examples) {
  const std::size_t n = 3;
  const auto d = weitzenboeck_derivation(n);
  const FDecomposition zero{Derivation(n), {MatrixQ::identity(n)}, {RatFunc(Poly(n))}};
  EXPECT_TRUE(verify_constant_multiple_membership(zero, d));

  const RatFunc not_constant(x(n, 1), x(n, 0));
  EXPECT_FALSE(is_constant_of(d, not_constant));
  const FDecomposition bad{Derivation(n), {MatrixQ::identity(n)}, {not_constant}};
  EXPECT_FALSE(verify_constant_multiple_membership(bad, d));
}

// Round trip for every truncated centralizer element of several linear
// derivations, Jordan-form or not.
void expect_round_trip(const MatrixQ& a, unsigned degree) {
  const auto d = linear_derivation(a);
  const auto cent = centralizer_truncated(d, degree);
  ASSERT_FALSE(cent.empty());
  for (const auto& t : cent) {
    const auto dec = decompose_over_constants(t, a);
    EXPECT_TRUE(verify_constant_multiple_membership(dec, d)) << to_string(t);
  }
}

TEST(DecomposeProperty, JordanBlocks) {
  for (std::size_t n = 2; n <= 4; ++n) expect_round_trip(MatrixQ::jordan_block(n, 0), 2);
  expect_round_trip(MatrixQ::jordan_block(2, 1), 2);
  expect_round_trip(block_sum({MatrixQ::jordan_block(2, 0), MatrixQ::jordan_block(1, 0)}), 2);
  expect_round_trip(block_sum({MatrixQ::jordan_block(2, 0), MatrixQ::jordan_block(2, 0)}), 1);
  expect_round_trip(MatrixQ::diagonal({BigRat(1), BigRat(2)}), 3);
}

TEST(DecomposeProperty, NonJordanMatrices) {
  // conjugates of J_3(0) by unipotent matrices
  testing::Gen gen(41);
  for (int iter = 0; iter < 4; ++iter) {
    MatrixQ p = MatrixQ::identity(3);
    MatrixQ pinv = MatrixQ::identity(3);
    const BigRat s = gen.rational();
    p(0, 2) = s;
    pinv(0, 2) = -s;
    const MatrixQ a = p * MatrixQ::jordan_block(3, 0) * pinv;
    ASSERT_FALSE(jordan_structure(a).has_value());
    expect_round_trip(a, 1);
  }
}

TEST(LinearProperty, LieHomomorphism) {
  testing::Gen gen(42);
  for (int iter = 0; iter < 100; ++iter) {
    const auto n = static_cast<std::size_t>(gen.integer(2, 4));
    MatrixQ a(n);
    MatrixQ b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (gen.integer(0, 1) == 1) a(i, j) = gen.rational();
        if (gen.integer(0, 1) == 1) b(i, j) = gen.rational();
      }
    }
    // [L(A), L(B)] = L(BA - AB) with d_i-coefficient convention (Ax)_i
    EXPECT_EQ(bracket(linear_derivation(a), linear_derivation(b)), linear_derivation(b * a - a * b));
  }
}

TEST(LinearProperty, KernelTimesCommutantCommutes) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const MatrixQ a = MatrixQ::jordan_block(n, 0);
    const auto d = linear_derivation(a);
    const auto kernel = kernel_power_basis(d, 1, 3);
    for (const auto& b : matrix_commutant(a).matrices) {
      for (const auto& f : kernel.vectors) {
        EXPECT_TRUE(bracket(f * linear_derivation(b), d).is_zero());
      }
    }
  }
}

}  // namespace
}  // namespace derivkit
