#include "derivkit/ratfunc.hpp"

#include <ostream>

#include "derivkit/errors.hpp"

namespace derivkit {

RatFunc::RatFunc(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.nvars(), 1);
  normalize();
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw PreconditionError("rational function with zero denominator");
  if (num_.nvars() != den_.nvars()) {
    throw DimensionError("rational function: numerator/denominator nvars mismatch");
  }
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), 1);
    return;
  }
  const Monomial common = monomial_gcd(num_.monomial_content(), den_.monomial_content());
  if (common.degree() > 0) {
    num_ = num_.divide_by_monomial(common);
    den_ = den_.divide_by_monomial(common);
  }
  // num/den = (c_den^-1 * sign) * num / pp(den)
  BigRat scale = 1 / den_.content();
  if (den_.leading_coefficient() < 0) scale = -scale;
  den_ *= scale;
  num_ *= scale;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw PreconditionError("division by zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc out(*this);
  out.num_ = -out.num_;
  return out;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.nvars() != b.nvars()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) {
    return to_string(f.num() * (1 / f.den().leading_coefficient()));
  }
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << to_string(f); }

}  // namespace derivkit
