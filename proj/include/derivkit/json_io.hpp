#pragma once

// JSON encodings. Coefficients are always exact "p/q" strings.
//
//   Poly            {"nvars": n, "terms": [{"coeff": "p/q", "exp": [a1, ..., an]}, ...]}
//   Derivation      {"nvars": n, "coeffs": [Poly, ...]}
//   PolyAutomorphism{"images": [Poly, ...], "inverse_images": [Poly, ...]}
//   MatrixQ         {"n": n, "entries": [["p/q", ...], ...]}
//   RatFunc         {"num": Poly, "den": Poly}
//
// Decoders throw ParseError on malformed input.

#include <json.hpp>

#include "derivkit/derivation.hpp"
#include "derivkit/linear.hpp"
#include "derivkit/weitzenboeck.hpp"

namespace derivkit {

using Json = nlohmann::ordered_json;

Json to_json(const Poly& p);
Json to_json(const RatFunc& f);
Json to_json(const Derivation& d);
Json to_json(const PolyAutomorphism& phi);
Json to_json(const MatrixQ& m);
Json to_json(const FDecomposition& dec);
Json to_json(const GeneratorElement& e);
Json to_json(const GeneratorSet& s);

Poly poly_from_json(const Json& j);
RatFunc ratfunc_from_json(const Json& j);
Derivation derivation_from_json(const Json& j);
PolyAutomorphism automorphism_from_json(const Json& j);
MatrixQ matrix_from_json(const Json& j);

}  // namespace derivkit
