#include "polylog/rational_func.hpp"

#include "polylog/error.hpp"

namespace polylog {

RationalFunc::RationalFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
  if (num.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  Poly n = num, d = den;
  if (!d.is_constant() && !n.is_constant()) {
    Poly g = gcd(n, d);
    if (g.degree() > 0) {
      divides(g, n, &n);
      divides(g, d, &d);
    }
  }
  Integer cn = n.content(), cd = d.content();
  Integer c;
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (d.lead() < 0) c = -c;
  if (c != 1) {
    n = n.divexact(c);
    d = d.divexact(c);
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

RationalFunc RationalFunc::constant(const Rational& c) {
  return RationalFunc(Raw{}, Poly::constant(c.get_num()), Poly::constant(c.get_den()));
}

Rational RationalFunc::constant_value() const {
  if (num_.is_zero()) return 0;
  Rational r(num_.lead(), den_.lead());
  r.canonicalize();
  return r;
}

RationalFunc RationalFunc::operator-() const { return RationalFunc(Raw{}, -num_, den_); }

RationalFunc RationalFunc::reciprocal() const {
  if (num_.is_zero()) throw Error(ErrorKind::ZeroDenominator, "reciprocal of zero");
  if (num_.lead() < 0) return RationalFunc(Raw{}, -den_, -num_);
  return RationalFunc(Raw{}, den_, num_);
}

RationalFunc RationalFunc::one_minus() const {
  Poly n = den_ - num_;
  if (n.is_zero()) return RationalFunc();
  return RationalFunc(Raw{}, std::move(n), den_);
}

RationalFunc RationalFunc::square() const { return RationalFunc(Raw{}, num_ * num_, den_ * den_); }

RationalFunc RationalFunc::pow(int k) const {
  if (k < 0) return reciprocal().pow(-k);
  return RationalFunc(Raw{}, polylog::pow(num_, k), polylog::pow(den_, k));
}

RationalFunc RationalFunc::compose(const RationalFunc& inner) const {
  // Homogenize: n(p/q) = N(p,q)/q^deg n.
  int dn = num_.degree(), dd = den_.degree();
  int d = std::max(dn, dd);
  auto homog = [&](const Poly& poly) {
    Poly r;
    const Poly& p = inner.num();
    const Poly& q = inner.den();
    for (int i = 0; i <= poly.degree(); ++i) {
      if (poly.coeffs()[i] == 0) continue;
      r += polylog::pow(p, i) * polylog::pow(q, d - i) * poly.coeffs()[i];
    }
    return r;
  };
  if (num_.is_zero()) return RationalFunc();
  return RationalFunc(homog(num_), homog(den_));
}

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
  if (a.den_ == b.den_) return RationalFunc(a.num_ + b.num_, a.den_);
  return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
  return RationalFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
  return RationalFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace polylog
