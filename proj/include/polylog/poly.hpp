#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace polylog {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense univariate polynomial with integer coefficients, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Integer> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly constant(const Integer& c);
  static Poly monomial(const Integer& c, int degree);
  static Poly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(int i) const;
  const Integer& lead() const { return c_.back(); }

  Integer content() const;  // nonnegative gcd of coefficients
  // Content removed and leading coefficient made positive.
  Poly primitive() const;
  // Number of trailing zero coefficients (power of x dividing the polynomial).
  int low_order() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Integer& k);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Integer& k) { return a *= k; }
  // Exact division of every coefficient by k.
  Poly divexact(const Integer& k) const;

  Poly derivative() const;
  Poly shift_down(int k) const;  // divide by x^k, assumes divisibility
  Poly compose(const Poly& inner) const;
  // Coefficients in reverse order, x^d p(1/x).
  Poly reversed() const;
  // p(-x)
  Poly reflect() const;

  Integer eval(const Integer& v) const;
  template <class Real>
  std::complex<Real> eval(std::complex<Real> z) const {
    std::complex<Real> r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + static_cast<Real>(it->get_d());
    return r;
  }

  std::size_t hash() const;
  std::string str(const std::string& var = "x") const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  // Total order: degree first, then coefficients from the top down.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<Integer> c_;
};

Poly pow(const Poly& p, unsigned k);

// Pseudo-division over Z: lc(b)^e * a = q b + r.
void pseudo_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
// Returns true and sets q when b divides a exactly over Z.
bool divides(const Poly& b, const Poly& a, Poly* q = nullptr);
// Primitive gcd with positive leading coefficient (zero if both zero).
Poly gcd(const Poly& a, const Poly& b);

struct PolyHash {
  std::size_t operator()(const Poly& p) const { return p.hash(); }
};

}  // namespace polylog
