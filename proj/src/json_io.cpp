#include "derivkit/json_io.hpp"

#include "derivkit/errors.hpp"

namespace derivkit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

BigRat rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return BigRat(v.get<long>());
  throw ParseError("coefficient must be a \"p/q\" string or an integer");
}

}  // namespace

Json to_json(const Poly& p) {
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json exps = Json::array();
    for (auto e : it->first.exponents()) exps.push_back(e);
    terms.push_back(Json{{"coeff", format_rational(it->second)}, {"exp", std::move(exps)}});
  }
  return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

Json to_json(const RatFunc& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

Json to_json(const Derivation& d) {
  Json coeffs = Json::array();
  for (const auto& c : d.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"nvars", d.nvars()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const PolyAutomorphism& phi) {
  Json images = Json::array();
  Json inverse = Json::array();
  for (const auto& p : phi.images()) images.push_back(to_json(p));
  for (const auto& p : phi.inverse_images()) inverse.push_back(to_json(p));
  return Json{{"images", std::move(images)}, {"inverse_images", std::move(inverse)}};
}

Json to_json(const MatrixQ& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.size()}, {"entries", std::move(rows)}};
}

Json to_json(const FDecomposition& dec) {
  Json basis = Json::array();
  Json coefficients = Json::array();
  for (const auto& b : dec.basis) basis.push_back(to_json(b));
  for (const auto& c : dec.coefficients) coefficients.push_back(to_json(c));
  return Json{{"target", to_json(dec.target)},
              {"basis", std::move(basis)},
              {"coefficients", std::move(coefficients)}};
}

Json to_json(const GeneratorElement& e) {
  Json factors = Json::array();
  for (const auto& f : e.factors) {
    factors.push_back(Json{{"generator", f.generator}, {"power", f.power}});
  }
  return Json{{"poly", to_json(e.poly)}, {"factors", std::move(factors)}};
}

Json to_json(const GeneratorSet& s) {
  Json elements = Json::array();
  for (const auto& e : s.elements) elements.push_back(to_json(e));
  return Json{{"n", s.n}, {"level", s.level}, {"elements", std::move(elements)}};
}

Poly poly_from_json(const Json& j) {
  const std::size_t n = size_field(j, "nvars");
  Poly p(n);
  for (const auto& term : array_field(j, "terms")) {
    const Json& exp = array_field(term, "exp");
    if (exp.size() != n) throw ParseError("monomial exponent vector has wrong length");
    std::vector<std::uint32_t> exps;
    for (const auto& e : exp) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
        throw ParseError("exponents must be non-negative integers");
      }
      exps.push_back(e.get<std::uint32_t>());
    }
    p.add_term(Monomial(std::move(exps)), rational_from_json(field(term, "coeff")));
  }
  return p;
}

RatFunc ratfunc_from_json(const Json& j) {
  Poly num = poly_from_json(field(j, "num"));
  Poly den = poly_from_json(field(j, "den"));
  if (den.is_zero()) throw ParseError("rational function with zero denominator");
  return RatFunc(std::move(num), std::move(den));
}

Derivation derivation_from_json(const Json& j) {
  const std::size_t n = size_field(j, "nvars");
  const Json& arr = array_field(j, "coeffs");
  if (arr.size() != n) throw ParseError("derivation must have one coefficient per variable");
  std::vector<Poly> coeffs;
  for (const auto& c : arr) {
    coeffs.push_back(poly_from_json(c));
    if (coeffs.back().nvars() != n) throw ParseError("derivation coefficient nvars mismatch");
  }
  return Derivation(std::move(coeffs));
}

PolyAutomorphism automorphism_from_json(const Json& j) {
  std::vector<Poly> images;
  std::vector<Poly> inverse;
  for (const auto& p : array_field(j, "images")) images.push_back(poly_from_json(p));
  for (const auto& p : array_field(j, "inverse_images")) inverse.push_back(poly_from_json(p));
  try {
    return PolyAutomorphism(std::move(images), std::move(inverse));
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

MatrixQ matrix_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  const Json& rows = array_field(j, "entries");
  if (rows.size() != n) throw ParseError("matrix must have n rows");
  MatrixQ m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("matrix row length != n");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rational_from_json(rows[i][k]);
  }
  return m;
}

}  // namespace derivkit
