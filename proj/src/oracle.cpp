#include "derivkit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "derivkit/errors.hpp"
#include "derivkit/linalg.hpp"

namespace derivkit {

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return GrlexLess{}(b, a); }
};

// Column index over monomials, descending graded-lex.
using MonomialIndex = std::map<Monomial, std::size_t, GrlexGreater>;

MonomialIndex index_monomials(std::span<const Poly> polys) {
  MonomialIndex idx;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) idx.emplace(m, 0);
  }
  std::size_t k = 0;
  for (auto& [m, pos] : idx) pos = k++;
  return idx;
}

void guard(std::size_t count, const char* what) {
  if (count > kMonomialGuard) {
    std::ostringstream msg;
    msg << what << ": " << count << " basis elements exceed the guard of " << kMonomialGuard;
    throw ResourceError(msg.str());
  }
}

Poly poly_from_coords(const std::vector<BigRat>& v, const std::vector<Monomial>& monos,
                      std::size_t nvars) {
  Poly p(nvars);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) p.add_term(monos[k], v[k]);
  }
  return p;
}

// Monomial coordinates of a derivation: (coefficient index, monomial).
struct DerivationKey {
  std::size_t index;
  Monomial monomial;
};
struct DerivationKeyLess {
  bool operator()(const DerivationKey& a, const DerivationKey& b) const {
    if (a.index != b.index) return a.index < b.index;
    return GrlexLess{}(b.monomial, a.monomial);
  }
};
using DerivationIndexMap = std::map<DerivationKey, std::size_t, DerivationKeyLess>;

DerivationIndexMap index_derivations(std::span<const Derivation> ds) {
  DerivationIndexMap idx;
  for (const auto& d : ds) {
    for (std::size_t i = 0; i < d.nvars(); ++i) {
      for (const auto& [m, c] : d.coeff(i).terms()) idx.emplace(DerivationKey{i, m}, 0);
    }
  }
  std::size_t k = 0;
  for (auto& [key, pos] : idx) pos = k++;
  return idx;
}

QMatrix derivation_columns(std::span<const Derivation> ds, const DerivationIndexMap& idx) {
  QMatrix m(idx.size(), ds.size());
  for (std::size_t col = 0; col < ds.size(); ++col) {
    for (std::size_t i = 0; i < ds[col].nvars(); ++i) {
      for (const auto& [mono, c] : ds[col].coeff(i).terms()) {
        m(idx.at(DerivationKey{i, mono}), col) = c;
      }
    }
  }
  return m;
}

// Every exponent vector beta over the generators with sum beta_j deg_j <= degree,
// paired with the product of powers. Generators of degree <= 0 are skipped.
std::vector<std::pair<std::vector<unsigned>, Poly>> kernel_monomials(
    std::span<const Poly> gens, std::size_t nvars, unsigned degree) {
  std::vector<std::pair<std::vector<unsigned>, Poly>> out;
  std::vector<unsigned> beta(gens.size(), 0);
  std::function<void(std::size_t, unsigned, const Poly&)> walk =
      [&](std::size_t j, unsigned remaining, const Poly& product) {
        if (j == gens.size()) {
          out.emplace_back(beta, product);
          return;
        }
        const auto deg = gens[j].degree();
        if (deg <= 0) {
          walk(j + 1, remaining, product);
          return;
        }
        Poly current = product;
        for (unsigned e = 0;; ++e) {
          beta[j] = e;
          walk(j + 1, remaining, current);
          if (static_cast<unsigned>(deg) > remaining) break;
          remaining -= static_cast<unsigned>(deg);
          current = current * gens[j];
        }
        beta[j] = 0;
      };
  walk(0, degree, Poly::constant(nvars, 1));
  return out;
}

}  // namespace

unsigned default_oracle_degree(std::size_t n) {
  if (n <= 4) return 6;
  if (n == 5) return 4;
  return 3;
}

GradedBasis kernel_power_basis(const Derivation& d, unsigned power, unsigned degree) {
  if (power < 1) throw PreconditionError("kernel_power_basis: power must be >= 1");
  const std::size_t n = d.nvars();
  const auto monos = monomials_up_to(n, degree);
  guard(monos.size(), "kernel_power_basis");

  std::vector<Poly> images;
  images.reserve(monos.size());
  for (const auto& m : monos) images.push_back(d.apply_power(Poly::term(m, 1), power));
  const auto rows = index_monomials(images);

  QMatrix matrix(rows.size(), monos.size());
  for (std::size_t col = 0; col < monos.size(); ++col) {
    for (const auto& [m, c] : images[col].terms()) matrix(rows.at(m), col) = c;
  }
  const auto kernel = null_space(matrix);
  const auto reduced = reduced_row_basis(kernel, monos.size());

  GradedBasis out{n, degree, {}};
  for (const auto& v : reduced) out.vectors.push_back(poly_from_coords(v, monos, n));
  return out;
}

GradedBasis span_basis(std::span<const Poly> polys, std::size_t nvars, unsigned degree_cap) {
  const auto idx = index_monomials(polys);
  std::vector<Monomial> monos(idx.size());
  for (const auto& [m, pos] : idx) monos[pos] = m;
  std::vector<std::vector<BigRat>> rows;
  for (const auto& p : polys) {
    std::vector<BigRat> v(idx.size());
    for (const auto& [m, c] : p.terms()) v[idx.at(m)] = c;
    rows.push_back(std::move(v));
  }
  GradedBasis out{nvars, degree_cap, {}};
  for (const auto& v : reduced_row_basis(rows, idx.size())) {
    out.vectors.push_back(poly_from_coords(v, monos, nvars));
  }
  return out;
}

bool span_contains(std::span<const Poly> outer, std::span<const Poly> inner) {
  std::vector<Poly> all(outer.begin(), outer.end());
  all.insert(all.end(), inner.begin(), inner.end());
  const auto idx = index_monomials(all);
  auto rank_of = [&](std::span<const Poly> ps) {
    QMatrix m(ps.size(), idx.size());
    for (std::size_t r = 0; r < ps.size(); ++r) {
      for (const auto& [mono, c] : ps[r].terms()) m(r, idx.at(mono)) = c;
    }
    return matrix_rank(std::move(m));
  };
  return rank_of(outer) == rank_of(all);
}

SpanCertificate module_span_check(const GeneratorSet& s, std::span<const Poly> kernel_generators,
                                  const GradedBasis& target, unsigned degree) {
  const std::size_t n = target.nvars;
  const auto multipliers = kernel_monomials(kernel_generators, n, degree);

  std::vector<Poly> spanning;
  std::vector<std::pair<std::size_t, std::size_t>> origin;  // (multiplier, element)
  for (std::size_t e = 0; e < s.elements.size(); ++e) {
    const auto& elem = s.elements[e].poly;
    if (elem.nvars() != n) throw DimensionError("module_span_check: nvars mismatch");
    if (elem.is_zero() || elem.degree() > static_cast<std::int64_t>(degree)) continue;
    for (std::size_t k = 0; k < multipliers.size(); ++k) {
      const auto& c = multipliers[k].second;
      if (c.degree() + elem.degree() > static_cast<std::int64_t>(degree)) continue;
      spanning.push_back(c * elem);
      origin.emplace_back(k, e);
    }
  }

  std::vector<Poly> columns = spanning;
  columns.insert(columns.end(), target.vectors.begin(), target.vectors.end());
  const auto rows = index_monomials(columns);
  guard(rows.size(), "module_span_check");
  guard(columns.size(), "module_span_check");

  QMatrix matrix(rows.size(), columns.size());
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (const auto& [m, c] : columns[col].terms()) matrix(rows.at(m), col) = c;
  }
  const auto ech = row_reduce(std::move(matrix));
  const std::size_t ns = spanning.size();

  SpanCertificate cert;
  cert.spanning_size = ns;
  cert.contained = true;
  for (std::size_t t = 0; t < target.vectors.size(); ++t) {
    const std::size_t col = ns + t;
    std::vector<WitnessTerm> witness;
    bool inside = true;
    for (std::size_t r = 0; r < ech.rank(); ++r) {
      const BigRat& v = ech.reduced(r, col);
      if (v == 0) continue;
      const std::size_t pc = ech.pivot_cols[r];
      if (pc >= ns) {
        inside = false;
        break;
      }
      witness.push_back(WitnessTerm{multipliers[origin[pc].first].first, origin[pc].second, v});
    }
    if (!inside) {
      cert.contained = false;
      cert.witnesses.clear();
      cert.first_failure = target.vectors[t];
      break;
    }
    cert.witnesses.push_back(std::move(witness));
  }
  return cert;
}

std::vector<Derivation> centralizer_truncated(const Derivation& d, unsigned degree) {
  const std::size_t n = d.nvars();
  const auto monos = monomials_up_to(n, degree);
  guard(monos.size() * n, "centralizer_truncated");

  std::vector<Derivation> unknowns;
  std::vector<Derivation> images;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : monos) {
      std::vector<Poly> coeffs(n, Poly(n));
      coeffs[i] = Poly::term(m, 1);
      unknowns.emplace_back(std::move(coeffs));
      images.push_back(bracket(unknowns.back(), d));
    }
  }
  const auto rows = index_derivations(images);
  const auto kernel = null_space(derivation_columns(images, rows));

  // unknown columns are already ordered (index asc, monomial desc)
  const auto reduced = reduced_row_basis(kernel, unknowns.size());
  std::vector<Derivation> out;
  for (const auto& v : reduced) {
    Derivation t(n);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] != 0) t += v[k] * unknowns[k];
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t derivation_span_rank(std::span<const Derivation> ds) {
  if (ds.empty()) return 0;
  const auto idx = index_derivations(ds);
  return matrix_rank(derivation_columns(ds, idx));
}

RankResult rank_over_fractions(std::span<const Derivation> ts, const RankOptions& options) {
  if (ts.empty()) throw PreconditionError("rank_over_fractions: empty derivation list");
  const std::size_t n = ts[0].nvars();
  for (const auto& t : ts) {
    if (t.nvars() != n) throw DimensionError("rank_over_fractions: nvars mismatch");
  }

  RankResult result;
  std::vector<std::vector<Poly>> matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : ts) matrix[i].push_back(t.coeff(i));
  }

  if (!options.force_symbolic) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::int64_t> coord(-options.bound, options.bound);
    auto sample = [&]() {
      std::vector<BigRat> point(n);
      for (auto& x : point) x = BigRat(static_cast<long>(coord(rng)));
      QMatrix values(n, ts.size());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) values(i, j) = matrix[i][j].evaluate(point);
      }
      return matrix_rank(std::move(values));
    };
    for (unsigned attempt = 0; attempt <= options.retry_budget; ++attempt) {
      const std::size_t a = sample();
      const std::size_t b = sample();
      result.samples.push_back(a);
      result.samples.push_back(b);
      if (a == b) {
        result.rank = a;
        result.method = "sampled";
        return result;
      }
    }
  }
  result.rank = fraction_free_rank(std::move(matrix), n);
  result.method = "symbolic";
  return result;
}

std::vector<Poly> kernel_generator_candidates(std::size_t n, unsigned degree) {
  if (n < 2 || n > 6) throw PreconditionError("kernel_generator_candidates: need 2 <= n <= 6");
  if (degree > default_oracle_degree(n)) {
    throw ResourceError("kernel_generator_candidates: degree exceeds the cap for this n");
  }
  const Derivation d = weitzenboeck_derivation(n);
  std::vector<Poly> gens;

  for (unsigned t = 1; t <= degree; ++t) {
    std::map<std::int64_t, std::vector<Monomial>> by_weight;
    for (const auto& m : monomials_of_degree(n, t)) by_weight[weight(m)].push_back(m);

    for (const auto& [w, monos] : by_weight) {
      // D maps the (t, w) block into (t, w + 2)
      std::vector<Poly> images;
      for (const auto& m : monos) images.push_back(d.apply(Poly::term(m, 1)));
      const auto rows = index_monomials(images);
      QMatrix matrix(rows.size(), monos.size());
      for (std::size_t col = 0; col < monos.size(); ++col) {
        for (const auto& [m, c] : images[col].terms()) matrix(rows.at(m), col) = c;
      }
      const auto kernel = reduced_row_basis(null_space(matrix), monos.size());
      if (kernel.empty()) continue;

      std::vector<Poly> known;
      for (const auto& [beta, product] : kernel_monomials(gens, n, t)) {
        if (product.degree() == static_cast<std::int64_t>(t) &&
            isobaric_weight(product) == std::optional<std::int64_t>(w)) {
          known.push_back(product);
        }
      }
      for (const auto& v : kernel) {
        Poly candidate = poly_from_coords(v, monos, n);
        const std::vector<Poly> one{candidate};
        if (!known.empty() && span_contains(known, one)) continue;
        known.push_back(candidate);
        gens.push_back(std::move(candidate));
      }
    }
  }

  for (std::size_t level = 1; level <= n; ++level) {
    const auto s = build_generator_set(level, gens);
    const auto target = kernel_power_basis(d, static_cast<unsigned>(level), degree);
    if (!module_span_check(s, gens, target, degree).contained) {
      std::ostringstream msg;
      msg << "kernel_generator_candidates: S_" << level << " fails the span check at degree "
          << degree;
      throw InternalInconsistency(msg.str());
    }
  }
  return gens;
}

}  // namespace derivkit
