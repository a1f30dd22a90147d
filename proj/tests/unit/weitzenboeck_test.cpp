#include <gtest/gtest.h>

#include "derivkit/errors.hpp"
#include "derivkit/oracle.hpp"
#include "derivkit/registry.hpp"
#include "derivkit/weitzenboeck.hpp"
#include "generators.hpp"

namespace derivkit {
namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

std::vector<Poly> paper_kernel3() {
  const std::size_t n = 3;
  return {x(n, 0), x(n, 0) * x(n, 2) - BigRat(1, 2) * x(n, 1) * x(n, 1)};
}

bool proportional(const Derivation& a, const Derivation& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  // compare against the first nonzero coefficient's leading term
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    if (b.coeff(i).is_zero()) return false;
    const BigRat r = b.coeff(i).leading_coefficient() / a.coeff(i).leading_coefficient();
    return r * a == b;
  }
  return false;
}

TEST(Sl2, TripleForThreeVariables) {
  const std::size_t n = 3;
  const auto t = build_sl2(n);
  EXPECT_EQ(t.lowering, Derivation({BigRat(2) * x(n, 1), BigRat(2) * x(n, 2), Poly(n)}));
  EXPECT_EQ(t.cartan, Derivation({BigRat(2) * x(n, 0), Poly(n), BigRat(-2) * x(n, 2)}));
  EXPECT_THROW((void)build_sl2(1), PreconditionError);
}

TEST(Sl2, RelationsForAllSmallN) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto t = build_sl2(n);
    EXPECT_EQ(bracket(t.raising, t.lowering), t.cartan) << n;
    EXPECT_EQ(bracket(t.cartan, t.raising), BigRat(2) * t.raising) << n;
    EXPECT_EQ(bracket(t.cartan, t.lowering), BigRat(-2) * t.lowering) << n;
  }
}

TEST(Weight, Examples) {
  EXPECT_EQ(weight(Monomial({1, 0, 0})), 2);
  EXPECT_EQ(weight(Monomial({0, 1, 0})), 0);
  EXPECT_EQ(weight(Monomial({1, 0, 1})), 0);
  EXPECT_EQ(weight(Monomial({0, 2, 0})), 0);
  EXPECT_EQ(isobaric_weight(paper_kernel3()[1]), 0);
  EXPECT_EQ(isobaric_weight(x(3, 0) + x(3, 1)), std::nullopt);
}

TEST(Weight, IsobaricComponents) {
  const std::size_t n = 3;
  const auto parts = isobaric_components(x(n, 0) + x(n, 1) * x(n, 1));
  ASSERT_EQ(parts.size(), 2U);
  EXPECT_EQ(parts[0].first, 2);
  EXPECT_EQ(parts[0].second, x(n, 0));
  EXPECT_EQ(parts[1].first, 0);
  EXPECT_EQ(isobaric_components(paper_kernel3()[1]).size(), 1U);
  EXPECT_TRUE(isobaric_components(Poly(n)).empty());
}

TEST(Weight, CartanEigenvalue) {
  const auto t = build_sl2(4);
  for (const auto& m : monomials_up_to(4, 3)) {
    const Poly p = Poly::term(m, 1);
    EXPECT_EQ(t.cartan.apply(p), BigRat(weight(m)) * p);
  }
}

TEST(CentralizingDerivation, Examples) {
  const std::size_t n = 3;
  EXPECT_EQ(centralizing_derivation(Poly::constant(n, 1)), Derivation::partial(n, 2));
  EXPECT_EQ(centralizing_derivation(x(n, 1)), weitzenboeck_derivation(n));
  EXPECT_EQ(centralizing_derivation(BigRat(4) * x(n, 1) * x(n, 1)),
            Derivation({BigRat(8) * x(n, 0) * x(n, 0), BigRat(8) * x(n, 0) * x(n, 1),
                        BigRat(4) * x(n, 1) * x(n, 1)}));
  EXPECT_THROW((void)centralizing_derivation(x(n, 2) * x(n, 2)), PreconditionError);
}

TEST(GeneratorSet, PaperExampleLevels) {
  const auto gens = paper_kernel3();
  const std::size_t n = 3;
  const auto s1 = build_generator_set(1, gens);
  ASSERT_EQ(s1.elements.size(), 1U);
  EXPECT_EQ(s1.elements[0].poly, Poly::constant(n, 1));
  EXPECT_TRUE(s1.elements[0].factors.empty());

  const auto s2 = build_generator_set(2, gens);
  ASSERT_EQ(s2.elements.size(), 2U);
  EXPECT_EQ(s2.elements[1].poly, x(n, 1));
  EXPECT_EQ(s2.elements[1].factors, (std::vector<FactorPower>{{0, 1}}));

  const auto s3 = build_generator_set(3, gens);
  std::vector<Poly> polys;
  for (const auto& e : s3.elements) polys.push_back(e.poly);
  EXPECT_EQ(polys, (std::vector<Poly>{Poly::constant(n, 1), x(n, 1), x(n, 2), x(n, 1) * x(n, 1)}));
  EXPECT_EQ(s3.elements[2].factors, (std::vector<FactorPower>{{0, 2}}));
  EXPECT_EQ(s3.elements[3].factors, (std::vector<FactorPower>{{0, 1}, {0, 1}}));
}

TEST(GeneratorSet, Errors) {
  EXPECT_THROW((void)build_generator_set(0, paper_kernel3()), PreconditionError);
  EXPECT_THROW((void)build_generator_set(2, std::vector<Poly>{}), PreconditionError);
  EXPECT_THROW((void)build_generator_set(2, std::vector<Poly>{x(2, 0), x(3, 0)}), DimensionError);
}

TEST(Centralizer, PaperExample) {
  const std::size_t n = 3;
  const auto gens = centralizer_generators(paper_kernel3());
  ASSERT_EQ(gens.size(), 4U);
  const std::vector<Derivation> paper{
      Derivation::partial(n, 2),
      Derivation({Poly(n), x(n, 0), x(n, 1)}),
      Derivation({BigRat(2) * x(n, 0), BigRat(2) * x(n, 1), BigRat(2) * x(n, 2)}),
      Derivation({BigRat(8) * x(n, 0) * x(n, 0), BigRat(8) * x(n, 0) * x(n, 1),
                  BigRat(4) * x(n, 1) * x(n, 1)})};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(proportional(gens[k].derivation, paper[k])) << to_string(gens[k].derivation);
  }
}

// The construction gives S_2 = {1, x2} for n = 2, hence two generators. The
// truncated oracle confirms they generate the centralizer as a module over
// Ker D = Q[x1] up to degree 3.
TEST(Centralizer, TwoVariables) {
  const std::size_t n = 2;
  const auto gens = centralizer_generators(std::vector<Poly>{x(n, 0)});
  ASSERT_EQ(gens.size(), 2U);
  EXPECT_EQ(gens[0].derivation, Derivation::partial(n, 1));
  EXPECT_EQ(gens[1].derivation, Derivation({x(n, 0), x(n, 1)}));

  const unsigned deg = 3;
  std::vector<Derivation> span;
  for (unsigned k = 0; k <= deg; ++k) {
    const Poly c = x(n, 0).pow(k);
    for (const auto& g : gens) {
      const auto t = c * g.derivation;
      if (static_cast<unsigned>(k) + (g.derivation.coeff(1).degree()) <= deg) span.push_back(t);
    }
  }
  const auto oracle = centralizer_truncated(weitzenboeck_derivation(n), deg);
  std::vector<Derivation> joint = span;
  joint.insert(joint.end(), oracle.begin(), oracle.end());
  EXPECT_EQ(derivation_span_rank(span), oracle.size());
  EXPECT_EQ(derivation_span_rank(joint), oracle.size());
}

TEST(Centralizer, CorruptedRegistryIsRejected) {
  const std::size_t n = 3;
  EXPECT_THROW((void)centralizer_generators(std::vector<Poly>{x(n, 0), x(n, 1).pow(3)}),
               RegistryError);
  EXPECT_THROW((void)centralizer_generators(std::vector<Poly>{}), RegistryError);
}

TEST(Centralizer, RegistryGeneratorsCommute) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto d = weitzenboeck_derivation(n);
    for (const auto& g : centralizer_generators(KernelRegistry::builtin().at(n).generators)) {
      EXPECT_TRUE(bracket(g.derivation, d).is_zero()) << n << ": " << to_string(g.derivation);
    }
  }
}

class Sl2Property : public ::testing::TestWithParam<std::size_t> {};

TEST_P(Sl2Property, WeightShiftUnderRaisingAndLowering) {
  const std::size_t n = GetParam();
  const auto t = build_sl2(n);
  testing::Gen gen(600 + n);
  for (int iter = 0; iter < 120; ++iter) {
    const Poly f = gen.isobaric_poly(n, 4);
    const auto w = *isobaric_weight(f);
    const Poly up = t.raising.apply(f);
    const Poly down = t.lowering.apply(f);
    if (!up.is_zero()) EXPECT_EQ(isobaric_weight(up), w + 2);
    if (!down.is_zero()) EXPECT_EQ(isobaric_weight(down), w - 2);
  }
}

TEST_P(Sl2Property, WeightAdditivity) {
  const std::size_t n = GetParam();
  testing::Gen gen(700 + n);
  for (int iter = 0; iter < 120; ++iter) {
    const Poly f = gen.isobaric_poly(n, 3);
    const Poly g = gen.isobaric_poly(n, 3);
    EXPECT_EQ(isobaric_weight(f * g), *isobaric_weight(f) + *isobaric_weight(g));
    const Monomial a = gen.monomial(n, 4);
    const Monomial b = gen.monomial(n, 4);
    EXPECT_EQ(weight(a * b), weight(a) + weight(b));
  }
}

TEST_P(Sl2Property, IsobaricComponentsOfKernelElements) {
  const std::size_t n = GetParam();
  const auto d = weitzenboeck_derivation(n);
  const auto basis = kernel_power_basis(d, 1, 4).vectors;
  testing::Gen gen(800 + n);
  for (int iter = 0; iter < 120; ++iter) {
    Poly f(n);
    for (const auto& b : basis) {
      if (gen.integer(0, 1) == 1) f += gen.rational() * b;
    }
    ASSERT_TRUE(d.apply(f).is_zero());
    Poly sum(n);
    for (const auto& [w, part] : isobaric_components(f)) {
      EXPECT_TRUE(d.apply(part).is_zero());
      EXPECT_EQ(isobaric_weight(part), w);
      sum += part;
    }
    EXPECT_EQ(sum, f);
  }
}

// Isobaric b in A_k \ A_{k-1}: random isobaric pieces of Ker D^k.
Poly isobaric_filtration_element(testing::Gen& gen, std::size_t n, const std::vector<Poly>& basis) {
  Poly f(n);
  while (f.is_zero()) {
    for (const auto& b : basis) {
      if (gen.integer(0, 2) == 0) f += gen.rational() * b;
    }
  }
  auto parts = isobaric_components(f);
  return parts[static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(parts.size()) - 1))]
      .second;
}

TEST_P(Sl2Property, OrderPreservedByLoweringAfterRaising) {
  const std::size_t n = GetParam();
  const auto t = build_sl2(n);
  testing::Gen gen(900 + n);
  std::vector<std::vector<Poly>> bases;
  for (unsigned k = 0; k <= n; ++k) {
    bases.push_back(k == 0 ? std::vector<Poly>{} : kernel_power_basis(t.raising, k, 3).vectors);
  }
  int checked = 0;
  for (int iter = 0; checked < 120 && iter < 2000; ++iter) {
    const auto k = static_cast<unsigned>(gen.integer(2, static_cast<std::int64_t>(n)));
    const Poly b = isobaric_filtration_element(gen, n, bases[k]);
    const auto ord = d_order(t.raising, b, static_cast<int>(n) + 1);
    if (ord != static_cast<int>(k) - 1) continue;
    ++checked;
    const Poly image = t.lowering.apply(t.raising.apply(b));
    EXPECT_EQ(d_order(t.raising, image, static_cast<int>(n) + 1), static_cast<int>(k) - 1)
        << to_string(b);
  }
  EXPECT_EQ(checked, 120);
}

TEST_P(Sl2Property, CommutatorScalarIsConsistent) {
  const std::size_t n = GetParam();
  const auto t = build_sl2(n);
  testing::Gen gen(1000 + n);
  const auto basis = kernel_power_basis(t.raising, static_cast<unsigned>(n), 3).vectors;
  for (int iter = 0; iter < 120; ++iter) {
    const Poly b = isobaric_filtration_element(gen, n, basis);
    const auto mu = *isobaric_weight(b);
    for (unsigned s = 2; s <= n; ++s) {
      const Poly lhs = t.raising.apply_power(t.lowering.apply(t.raising.apply(b)), s - 1) -
                       t.lowering.apply(t.raising.apply_power(b, s));
      const Poly base = t.raising.apply_power(b, s - 1);
      if (base.is_zero()) {
        EXPECT_TRUE(lhs.is_zero());
        continue;
      }
      // exact division, checked monomial by monomial
      const BigRat lambda = lhs.coefficient(base.leading_monomial()) / base.leading_coefficient();
      EXPECT_EQ(lhs, lambda * base);
      // the value accumulated in the inductive proof: weights of D^t(b)
      BigRat expected = 0;
      for (unsigned u = 1; u < s; ++u) expected += BigRat(mu + 2 * static_cast<std::int64_t>(u));
      EXPECT_EQ(lambda, expected);
    }
  }
}

TEST_P(Sl2Property, FiltrationStepsThroughD) {
  const std::size_t n = GetParam();
  const auto d = weitzenboeck_derivation(n);
  for (unsigned i = 1; i <= n; ++i) {
    const auto ai = kernel_power_basis(d, i, 3).vectors;
    const auto prev = kernel_power_basis(d, i == 1 ? 1 : i - 1, 3).vectors;
    for (const auto& f : ai) {
      const std::vector<Poly> image{d.apply(f)};
      if (i == 1) {
        EXPECT_TRUE(image[0].is_zero());
      } else {
        EXPECT_TRUE(span_contains(prev, image));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Weitzenboeck, Sl2Property, ::testing::Values(3U, 4U));

}  // namespace
}  // namespace derivkit
