#include "derivkit/poly.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <sstream>

#include "derivkit/errors.hpp"

namespace derivkit {

namespace {

std::atomic<std::uint32_t> g_degree_cap{64};

void check_degree(std::int64_t degree, const char* where) {
  if (degree > static_cast<std::int64_t>(g_degree_cap.load())) {
    std::ostringstream msg;
    msg << where << ": total degree " << degree << " exceeds cap "
        << g_degree_cap.load();
    throw ResourceError(msg.str());
  }
}

void require_same_nvars(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    std::ostringstream msg;
    msg << where << ": variable count mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void append_compositions(std::size_t nvars, unsigned remaining, std::size_t pos,
                         std::vector<std::uint32_t>& current,
                         std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[pos] = e;
    append_compositions(nvars, remaining - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

BigRat parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  const auto slash = body.find('/');
  const std::string num = body.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + text + "'");
  }
  BigInt d(den);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  BigRat value(BigInt(num), d);
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string format_rational(const BigRat& value) { return value.get_str(); }

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw IndexError("variable index out of range");
  Monomial m(nvars);
  m.exps_[i] = 1;
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  require_same_nvars(nvars(), other.nvars(), "monomial product");
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

bool Monomial::divisible_by(const Monomial& other) const {
  if (other.nvars() != nvars()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (other.exps_[i] > exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& other) const {
  if (!divisible_by(other)) throw InternalInconsistency("monomial does not divide");
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  require_same_nvars(a.nvars(), b.nvars(), "monomial gcd");
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(std::move(e));
}

std::uint32_t degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(std::uint32_t cap) { g_degree_cap.store(cap); }

DegreeCapScope::DegreeCapScope(std::uint32_t cap) : saved_(g_degree_cap.load()) {
  g_degree_cap.store(cap);
}
DegreeCapScope::~DegreeCapScope() { g_degree_cap.store(saved_); }

Poly Poly::constant(std::size_t nvars, const BigRat& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Poly p(nvars);
  p.add_term(Monomial::variable(nvars, i), 1);
  return p;
}

Poly Poly::term(const Monomial& m, const BigRat& c) {
  Poly p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

std::int64_t Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<std::int64_t>(terms_.rbegin()->first.degree());
}

BigRat Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigRat(0) : it->second;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("leading monomial of zero polynomial");
  return terms_.rbegin()->first;
}

const BigRat& Poly::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

BigRat Poly::content() const {
  if (terms_.empty()) return BigRat(1);
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  BigRat out(num_gcd, den_lcm);
  out.canonicalize();
  return out;
}

Poly Poly::primitive_part() const {
  if (terms_.empty()) return *this;
  BigRat scale = 1 / content();
  if (leading_coefficient() < 0) scale = -scale;
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c *= scale;
  return out;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial(nvars_);
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = monomial_gcd(g, m);
  return g;
}

Poly Poly::divide_by_monomial(const Monomial& m) const {
  Poly out(nvars_);
  for (const auto& [mono, c] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), mono.divided_by(m), c);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const BigRat& c) {
  require_same_nvars(nvars_, m.nvars(), "add_term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_nvars(nvars_, other.nvars_, "polynomial add");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_nvars(nvars_, other.nvars_, "polynomial sub");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const BigRat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_nvars(a.nvars_, b.nvars_, "polynomial mul");
  Poly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  check_degree(a.degree() + b.degree(), "polynomial mul");
  BigRat prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(ma * mb, prod);
    }
  }
  return out;
}

Poly Poly::partial(std::size_t i) const {
  if (i >= nvars_) throw IndexError("partial derivative index out of range");
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    const auto e = m[i];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps(m.exponents().begin(), m.exponents().end());
    exps[i] -= 1;
    out.add_term(Monomial(std::move(exps)), c * e);
  }
  return out;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars_) {
    throw DimensionError("substitute: expected one image per variable");
  }
  const std::size_t target_nvars = images.empty() ? 0 : images[0].nvars();
  for (const auto& img : images) {
    require_same_nvars(target_nvars, img.nvars(), "substitute");
  }
  if (images.empty()) return *this;

  std::int64_t bound = 0;
  for (const auto& [m, c] : terms_) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      d += static_cast<std::int64_t>(m[i]) * std::max<std::int64_t>(images[i].degree(), 0);
    }
    bound = std::max(bound, d);
  }
  check_degree(bound, "substitute");

  // powers[i][k] = images[i]^k, built lazily
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target_nvars, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };

  Poly out(target_nvars);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target_nvars, c);
    for (std::size_t i = 0; i < nvars_ && !t.is_zero(); ++i) {
      if (m[i] != 0) t = t * power_of(i, m[i]);
    }
    out += t;
  }
  return out;
}

BigRat Poly::evaluate(std::span<const BigRat> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluate: point length mismatch");
  BigRat total = 0;
  BigRat t;
  for (const auto& [m, c] : terms_) {
    t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

Poly Poly::pow(unsigned k) const {
  if (k > 0 && degree() > 0) check_degree(degree() * k, "polynomial pow");
  Poly out = Poly::constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    BigRat mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree() == 0) {
      os << format_rational(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> current(nvars, 0);
  append_compositions(nvars, degree, 0, current, out);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  for (unsigned d = degree + 1; d-- > 0;) {
    auto block = monomials_of_degree(nvars, d);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace derivkit
