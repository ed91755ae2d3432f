#pragma once

#include <complex>
#include <string>

#include "polylog/poly.hpp"

namespace polylog {

// num/den with gcd(num, den) = 1 over Q, joint integer content 1, den with positive lead.
class RationalFunc {
 public:
  RationalFunc() : num_(), den_(Poly::constant(1)) {}
  RationalFunc(const Poly& num, const Poly& den);  // throws ZeroDenominator
  explicit RationalFunc(const Poly& p) : RationalFunc(p, Poly::constant(1)) {}

  static RationalFunc constant(const Rational& c);
  static RationalFunc x() { return RationalFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // valid when is_constant()
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  RationalFunc operator-() const;
  RationalFunc reciprocal() const;  // throws ZeroDenominator on 0
  RationalFunc one_minus() const;   // 1 - f
  RationalFunc square() const;
  RationalFunc pow(int k) const;
  // f(g(x))
  RationalFunc compose(const RationalFunc& inner) const;

  friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
  friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b);

  template <class Real>
  std::complex<Real> eval(std::complex<Real> z) const {
    return num_.eval(z) / den_.eval(z);
  }

  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }
  std::string str() const;

  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const RationalFunc& a, const RationalFunc& b) {
    if (a.num_ == b.num_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

 private:
  struct Raw {};
  RationalFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_, den_;
};

struct RationalFuncHash {
  std::size_t operator()(const RationalFunc& f) const { return f.hash(); }
};

}  // namespace polylog
