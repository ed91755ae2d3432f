#include "polylog/poly.hpp"

#include <sstream>
#include <utility>

namespace polylog {

Poly::Poly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

Poly Poly::constant(const Integer& c) { return Poly(std::vector<Integer>{c}); }

Poly Poly::monomial(const Integer& c, int degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Integer Poly::content() const {
  Integer g = 0;
  for (const auto& a : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  Integer g = content();
  if (lead() < 0) g = -g;
  if (g == 1) return *this;
  return divexact(g);
}

int Poly::low_order() const {
  int k = 0;
  while (k < static_cast<int>(c_.size()) && c_[k] == 0) ++k;
  return k;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Integer& k) {
  if (k == 0) {
    c_.clear();
    return *this;
  }
  for (auto& a : c_) a *= k;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::divexact(const Integer& k) const {
  Poly r = *this;
  for (auto& a : r.c_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Integer> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(r));
}

Poly Poly::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k >= static_cast<int>(c_.size())) return Poly();
  return Poly(std::vector<Integer>(c_.begin() + k, c_.end()));
}

Poly Poly::compose(const Poly& inner) const {
  Poly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + Poly::constant(*it);
  return r;
}

Poly Poly::reversed() const {
  return Poly(std::vector<Integer>(c_.rbegin(), c_.rend()));
}

Poly Poly::reflect() const {
  Poly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

Integer Poly::eval(const Integer& v) const {
  Integer r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
  return r;
}

std::size_t Poly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ c_.size();
  for (const auto& a : c_) {
    std::size_t v = mpz_size(a.get_mpz_t()) ? mpz_getlimbn(a.get_mpz_t(), 0) : 0;
    v ^= static_cast<std::size_t>(mpz_sgn(a.get_mpz_t()) + 1) << 61;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    const Integer& a = c_[i];
    if (a == 0) continue;
    Integer mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? "-" : "+");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(1);
  Poly b = p;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

void pseudo_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  q = Poly();
  r = a;
  int db = b.degree();
  const Integer& lb = b.lead();
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    Integer lr = r.lead();
    q *= lb;
    q += Poly::monomial(lr, shift);
    r *= lb;
    r -= Poly::monomial(lr, shift) * b;
  }
}

bool divides(const Poly& b, const Poly& a, Poly* q) {
  if (b.is_zero()) return false;
  std::vector<Integer> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) {
    if (a.is_zero()) {
      if (q) *q = Poly();
      return true;
    }
    return false;
  }
  std::vector<Integer> quo(da - db + 1);
  const Integer& lb = b.lead();
  const auto& bc = b.coeffs();
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), lb.get_mpz_t())) return false;
    Integer t;
    mpz_divexact(t.get_mpz_t(), rem[i].get_mpz_t(), lb.get_mpz_t());
    quo[i - db] = t;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= t * bc[j];
  }
  for (int i = 0; i < db; ++i)
    if (rem[i] != 0) return false;
  if (q) *q = Poly(std::move(quo));
  return true;
}

Poly gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.primitive();
  if (b0.is_zero()) return a0.primitive();
  Poly a = a0.primitive(), b = b0.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly q, r;
    pseudo_divmod(a, b, q, r);
    a = std::move(b);
    b = r.primitive();
  }
  return a.primitive();
}

}  // namespace polylog
