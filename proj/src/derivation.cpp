#include "derivkit/derivation.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "derivkit/errors.hpp"

namespace derivkit {

namespace {

void require_match(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    std::ostringstream msg;
    msg << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

std::vector<Poly> variables(std::size_t n) {
  std::vector<Poly> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Poly::variable(n, i));
  return out;
}

}  // namespace

Derivation::Derivation(std::size_t nvars) : coeffs_(nvars, Poly(nvars)) {}

Derivation::Derivation(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) require_match(c.nvars(), coeffs_.size(), "derivation");
}

Derivation Derivation::partial(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw IndexError("partial: index out of range");
  Derivation d(nvars);
  d.coeffs_[i] = Poly::constant(nvars, 1);
  return d;
}

bool Derivation::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Poly Derivation::apply(const Poly& f) const {
  require_match(f.nvars(), nvars(), "apply");
  // Term by term, without materialising each partial derivative.
  Poly out(nvars());
  if (f.is_zero()) return out;
  for (const auto& c : coeffs_) {
    if (c.is_zero() || f.degree() == 0) continue;
    const std::int64_t bound = static_cast<std::int64_t>(f.degree()) - 1 + c.degree();
    if (bound > static_cast<std::int64_t>(degree_cap())) {
      throw ResourceError("derivation apply: total degree " + std::to_string(bound) +
                          " exceeds cap " + std::to_string(degree_cap()));
    }
  }
  std::vector<std::uint32_t> exps(nvars());
  BigRat scaled;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const auto e = m[i];
      if (e == 0 || coeffs_[i].is_zero()) continue;
      std::copy(m.exponents().begin(), m.exponents().end(), exps.begin());
      exps[i] -= 1;
      const Monomial shifted(exps);
      for (const auto& [mc, cc] : coeffs_[i].terms()) {
        scaled = c * cc * e;
        out.add_term(shifted * mc, scaled);
      }
    }
  }
  return out;
}

RatFunc Derivation::apply(const RatFunc& f) const {
  const Poly& p = f.num();
  const Poly& q = f.den();
  return RatFunc(apply(p) * q - p * apply(q), q * q);
}

Poly Derivation::apply_power(const Poly& f, unsigned k) const {
  Poly out = f;
  for (unsigned i = 0; i < k && !out.is_zero(); ++i) out = apply(out);
  return out;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  require_match(nvars(), o.nvars(), "derivation add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) {
  require_match(nvars(), o.nvars(), "derivation sub");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Derivation operator*(const BigRat& c, const Derivation& d) {
  Derivation out(d);
  for (auto& p : out.coeffs_) p *= c;
  return out;
}

Derivation operator*(const Poly& f, const Derivation& d) {
  require_match(f.nvars(), d.nvars(), "poly * derivation");
  Derivation out(d);
  for (auto& p : out.coeffs_) p = f * p;
  return out;
}

Derivation bracket(const Derivation& d, const Derivation& t) {
  require_match(d.nvars(), t.nvars(), "bracket");
  std::vector<Poly> coeffs;
  coeffs.reserve(d.nvars());
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    coeffs.push_back(d.apply(t.coeff(i)) - t.apply(d.coeff(i)));
  }
  return Derivation(std::move(coeffs));
}

bool commutes(const Derivation& d, const Derivation& t) {
  require_match(d.nvars(), t.nvars(), "commutes");
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    if (d.apply(t.coeff(i)) != t.apply(d.coeff(i))) return false;
  }
  return true;
}

std::optional<int> d_order(const Derivation& d, const Poly& f, int bound) {
  if (bound < 1) throw PreconditionError("d_order: bound must be >= 1");
  require_match(d.nvars(), f.nvars(), "d_order");
  Poly current = f;
  for (int k = 0; k <= bound; ++k) {
    if (current.is_zero()) return k - 1;
    if (k == bound) break;
    current = d.apply(current);
  }
  return std::nullopt;
}

DerivationIndex derivation_index(const Derivation& d) {
  DerivationIndex idx{0, d.nvars()};
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    if (d.coeff(i).is_zero()) continue;
    if (idx.count == 0) idx.first = i;
    ++idx.count;
  }
  if (idx.count == 0) throw PreconditionError("index of the zero derivation is undefined");
  return idx;
}

PolyAutomorphism::PolyAutomorphism(std::vector<Poly> images, std::vector<Poly> inverse_images)
    : images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  const std::size_t n = images_.size();
  require_match(inverse_images_.size(), n, "automorphism");
  for (const auto& p : images_) require_match(p.nvars(), n, "automorphism image");
  for (const auto& p : inverse_images_) require_match(p.nvars(), n, "automorphism inverse");
  const auto vars = variables(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (images_[i].substitute(inverse_images_) != vars[i] ||
        inverse_images_[i].substitute(images_) != vars[i]) {
      throw PreconditionError("automorphism: supplied inverse does not invert the map");
    }
  }
}

PolyAutomorphism PolyAutomorphism::identity(std::size_t nvars) {
  auto vars = variables(nvars);
  return PolyAutomorphism(vars, vars);
}

Poly PolyAutomorphism::apply(const Poly& f) const { return f.substitute(images_); }

Poly PolyAutomorphism::apply_inverse(const Poly& f) const {
  return f.substitute(inverse_images_);
}

PolyAutomorphism PolyAutomorphism::inverse() const {
  return PolyAutomorphism(inverse_images_, images_);
}

Derivation conjugate(const Derivation& d, const PolyAutomorphism& phi) {
  require_match(d.nvars(), phi.nvars(), "conjugate");
  std::vector<Poly> coeffs;
  coeffs.reserve(d.nvars());
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    coeffs.push_back(phi.apply_inverse(d.apply(phi.images()[i])));
  }
  return Derivation(std::move(coeffs));
}

std::pair<Derivation, Derivation> split_components(const Derivation& t, std::size_t k) {
  if (k < 1 || k >= t.nvars()) throw IndexError("split_components: need 1 <= k < n");
  std::vector<Poly> low(t.coeffs());
  std::vector<Poly> high(t.coeffs());
  for (std::size_t i = 0; i < t.nvars(); ++i) {
    (i < k ? high : low)[i] = Poly(t.nvars());
  }
  return {Derivation(std::move(low)), Derivation(std::move(high))};
}

std::string to_string(const Derivation& d) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < d.nvars(); ++i) {
    const Poly& c = d.coeff(i);
    if (c.is_zero()) continue;
    std::string text = to_string(c);
    const bool compound = c.size() > 1;
    if (!first) {
      if (!compound && text[0] == '-') {
        os << " - ";
        text.erase(0, 1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (compound) {
      os << "(" << text << ")*";
    } else if (text == "-1") {
      os << "-";
    } else if (text != "1") {
      os << text << "*";
    }
    os << "d" << (i + 1);
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Derivation& d) { return os << to_string(d); }

}  // namespace derivkit
