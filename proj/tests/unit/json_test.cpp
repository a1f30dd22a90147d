#include <gtest/gtest.h>

#include "derivkit/errors.hpp"
#include "derivkit/json_io.hpp"
#include "derivkit/registry.hpp"
#include "generators.hpp"

namespace derivkit {
namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

TEST(Json, PolyEncoding) {
  const std::size_t n = 3;
  const Poly a2 = x(n, 0) * x(n, 2) - BigRat(1, 2) * x(n, 1) * x(n, 1);
  EXPECT_EQ(to_json(a2).dump(),
            R"({"nvars":3,"terms":[{"coeff":"1","exp":[1,0,1]},{"coeff":"-1/2","exp":[0,2,0]}]})");
  EXPECT_EQ(poly_from_json(to_json(a2)), a2);
}

TEST(Json, AcceptsIntegerCoefficients) {
  const Json j = Json::parse(R"({"nvars":2,"terms":[{"coeff":3,"exp":[0,1]}]})");
  EXPECT_EQ(poly_from_json(j), BigRat(3) * x(2, 1));
}

TEST(Json, Malformed) {
  EXPECT_THROW((void)poly_from_json(Json::parse(R"({"terms":[]})")), ParseError);
  EXPECT_THROW((void)poly_from_json(Json::parse(R"({"nvars":2,"terms":[{"coeff":"1","exp":[1]}]})")),
               ParseError);
  EXPECT_THROW((void)poly_from_json(Json::parse(R"({"nvars":2,"terms":[{"coeff":"1","exp":[-1,0]}]})")),
               ParseError);
  EXPECT_THROW((void)derivation_from_json(Json::parse(R"({"nvars":2,"coeffs":[]})")), ParseError);
  EXPECT_THROW((void)matrix_from_json(Json::parse(R"({"n":2,"entries":[["1"]]})")), ParseError);
  EXPECT_THROW((void)ratfunc_from_json(Json::parse(
                   R"({"num":{"nvars":1,"terms":[]},"den":{"nvars":1,"terms":[]}})")),
               ParseError);
}

TEST(Json, MatrixAndAutomorphism) {
  const auto m = MatrixQ::jordan_block(3, BigRat(1, 2));
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
  const std::size_t n = 2;
  const PolyAutomorphism phi({x(n, 0), x(n, 1) + x(n, 0) * x(n, 0)},
                             {x(n, 0), x(n, 1) - x(n, 0) * x(n, 0)});
  const auto back = automorphism_from_json(to_json(phi));
  EXPECT_EQ(back.images(), phi.images());
  EXPECT_EQ(back.inverse_images(), phi.inverse_images());
  EXPECT_THROW((void)automorphism_from_json(Json::parse(R"({"images":[]})")), ParseError);
}

TEST(JsonProperty, RoundTrips) {
  testing::Gen gen(61);
  for (int iter = 0; iter < 100; ++iter) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 4));
    const Poly p = gen.poly(n, 4);
    EXPECT_EQ(poly_from_json(Json::parse(to_json(p).dump())), p);
    const auto d = gen.derivation(n, 3);
    EXPECT_EQ(derivation_from_json(Json::parse(to_json(d).dump())), d);
    const RatFunc f(gen.poly(n, 2), gen.nonzero_poly(n, 2));
    EXPECT_TRUE(ratfunc_from_json(to_json(f)) == f);
  }
}

TEST(Registry, Builtin) {
  const auto& reg = KernelRegistry::builtin();
  EXPECT_EQ(reg.keys(), (std::vector<std::size_t>{2, 3, 4, 5, 6}));
  EXPECT_EQ(reg.at(2).generators, std::vector<Poly>{x(2, 0)});
  EXPECT_EQ(reg.at(3).provenance, "classical");
  EXPECT_EQ(reg.at(4).provenance, "oracle-derived");
  EXPECT_EQ(reg.at(4).generators.size(), 4U);
  EXPECT_THROW((void)reg.at(9), RegistryError);
  for (auto n : reg.keys()) EXPECT_TRUE(reg.validate(n).empty()) << n;
}

TEST(Registry, RoundTripAndValidation) {
  KernelRegistry reg;
  reg.insert(RegistryEntry{3, "test", 0, {x(3, 0), x(3, 1).pow(3)}});
  const auto back = KernelRegistry::from_json(Json::parse(reg.to_json().dump()));
  EXPECT_EQ(back.at(3).generators, reg.at(3).generators);
  const auto problems = back.validate(3);
  ASSERT_EQ(problems.size(), 1U);
  EXPECT_NE(problems[0].find("x2^3"), std::string::npos);
  EXPECT_THROW((void)KernelRegistry::from_json(Json::parse(R"({"entries":[{"n":2,"generators":[]}]})")),
               ParseError);
  EXPECT_THROW((void)KernelRegistry::from_file("/nonexistent/registry.json"), ParseError);
}

}  // namespace
}  // namespace derivkit
