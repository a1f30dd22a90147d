#include "derivkit/weitzenboeck.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "derivkit/errors.hpp"

namespace derivkit {

namespace {

// Degree ascending, then term-by-term from the leading term with larger
// monomials first; equal polynomials compare equivalent.
bool generator_order(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const GrlexLess less;
  auto ia = a.terms().rbegin();
  auto ib = b.terms().rbegin();
  for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ib->first, ia->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return a.size() < b.size();
}

struct Atom {
  std::size_t generator;
  unsigned power;
  const Poly* value;
};

}  // namespace

Derivation weitzenboeck_derivation(std::size_t n) {
  std::vector<Poly> coeffs(n, Poly(n));
  for (std::size_t i = 1; i < n; ++i) coeffs[i] = Poly::variable(n, i - 1);
  return Derivation(std::move(coeffs));
}

Sl2Triple build_sl2(std::size_t n) {
  if (n < 2) throw PreconditionError("sl2 triple needs n >= 2");
  std::vector<Poly> lowering(n, Poly(n));
  std::vector<Poly> cartan(n, Poly(n));
  const auto nn = static_cast<std::int64_t>(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto i = static_cast<std::int64_t>(idx) + 1;
    if (idx + 1 < n) lowering[idx] = Poly::variable(n, idx + 1) * BigRat(i * (nn - i));
    cartan[idx] = Poly::variable(n, idx) * BigRat(nn - 2 * i + 1);
  }
  return Sl2Triple{n, weitzenboeck_derivation(n), Derivation(std::move(lowering)),
                   Derivation(std::move(cartan))};
}

std::int64_t weight(const Monomial& m) {
  const auto n = static_cast<std::int64_t>(m.nvars());
  std::int64_t w = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    w += (n - 2 * static_cast<std::int64_t>(i) - 1) * static_cast<std::int64_t>(m[i]);
  }
  return w;
}

std::optional<std::int64_t> isobaric_weight(const Poly& f) {
  if (f.is_zero()) return std::nullopt;
  const auto w = weight(f.terms().begin()->first);
  for (const auto& [m, c] : f.terms()) {
    if (weight(m) != w) return std::nullopt;
  }
  return w;
}

std::vector<std::pair<std::int64_t, Poly>> isobaric_components(const Poly& f) {
  std::map<std::int64_t, Poly, std::greater<>> parts;
  for (const auto& [m, c] : f.terms()) {
    auto [it, inserted] = parts.try_emplace(weight(m), f.nvars());
    it->second.add_term(m, c);
  }
  return {parts.begin(), parts.end()};
}

Derivation centralizing_derivation(const Poly& f) {
  const std::size_t n = f.nvars();
  const Derivation d = weitzenboeck_derivation(n);
  std::vector<Poly> powers{f};
  for (std::size_t k = 1; k < n; ++k) powers.push_back(d.apply(powers.back()));
  if (!d.apply(powers.back()).is_zero()) {
    throw PreconditionError("D_f needs D-order <= n-1, but D^n(" + to_string(f) + ") != 0");
  }
  std::vector<Poly> coeffs(n, Poly(n));
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = powers[n - 1 - i];
  return Derivation(std::move(coeffs));
}

GeneratorSet build_generator_set(std::size_t level, std::span<const Poly> kernel_generators) {
  if (level < 1) throw PreconditionError("generator set level must be >= 1");
  if (kernel_generators.empty()) throw PreconditionError("empty kernel generator list");
  const std::size_t n = kernel_generators[0].nvars();
  for (const auto& g : kernel_generators) {
    if (g.nvars() != n) throw DimensionError("kernel generators differ in nvars");
  }
  const Sl2Triple sl2 = build_sl2(n);
  const unsigned budget = static_cast<unsigned>(level - 1);

  // lowered[j][k-1] = D^^k(a_j) for k = 1.. while nonzero
  std::vector<std::vector<Poly>> lowered(kernel_generators.size());
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < kernel_generators.size(); ++j) {
    Poly current = kernel_generators[j];
    for (unsigned k = 1; k <= budget; ++k) {
      current = sl2.lowering.apply(current);
      if (current.is_zero()) break;
      lowered[j].push_back(current);
    }
  }
  for (std::size_t j = 0; j < lowered.size(); ++j) {
    for (std::size_t k = 0; k < lowered[j].size(); ++k) {
      atoms.push_back(Atom{j, static_cast<unsigned>(k + 1), &lowered[j][k]});
    }
  }

  std::vector<GeneratorElement> found;
  std::vector<FactorPower> record;
  std::function<void(std::size_t, unsigned, const Poly&)> extend =
      [&](std::size_t from, unsigned remaining, const Poly& product) {
        found.push_back(GeneratorElement{product.primitive_part(), record});
        for (std::size_t a = from; a < atoms.size(); ++a) {
          if (atoms[a].power > remaining) continue;
          record.push_back(FactorPower{atoms[a].generator, atoms[a].power});
          extend(a, remaining - atoms[a].power, product * *atoms[a].value);
          record.pop_back();
        }
      };
  extend(0, budget, Poly::constant(n, 1));

  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return generator_order(a.poly, b.poly);
  });
  auto last = std::unique(found.begin(), found.end(),
                          [](const auto& a, const auto& b) { return a.poly == b.poly; });
  found.erase(last, found.end());
  return GeneratorSet{n, level, std::move(found)};
}

std::vector<CentralizerGenerator> centralizer_generators(std::span<const Poly> kernel_generators) {
  if (kernel_generators.empty()) throw RegistryError("no kernel generators supplied");
  const std::size_t n = kernel_generators[0].nvars();
  const GeneratorSet s = build_generator_set(n, kernel_generators);
  std::vector<CentralizerGenerator> out;
  out.reserve(s.elements.size());
  for (const auto& element : s.elements) {
    // centralizing_derivation already computes D^n(s); reuse its check.
    try {
      out.push_back(CentralizerGenerator{element, centralizing_derivation(element.poly)});
    } catch (const PreconditionError&) {
      throw RegistryError("D^n(s) != 0 for s = " + to_string(element.poly) +
                          "; the kernel generators are not constants of D");
    }
  }
  return out;
}

}  // namespace derivkit
