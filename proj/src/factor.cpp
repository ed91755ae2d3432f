#include "polylog/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>

#include "polylog/error.hpp"

namespace polylog {
namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // coefficients mod p, lowest first, trimmed

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const Poly& f, u64 p) {
  ModPoly r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
  trim(r);
  return r;
}

ModPoly sub(ModPoly a, const ModPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

ModPoly add(ModPoly a, const ModPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  trim(a);
  return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

ModPoly scale(ModPoly a, u64 k, u64 p) {
  for (auto& v : a) v = mulmod(v, k, p);
  trim(a);
  return a;
}

void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r, u64 p) {
  r = a;
  if (deg(a) < deg(b)) {
    q.clear();
    return;
  }
  q.assign(a.size() - b.size() + 1, 0);
  u64 inv = invmod(b.back(), p);
  for (int i = deg(r); i >= deg(b); --i) {
    u64 c = mulmod(r[i], inv, p);
    if (!c) continue;
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) r[i - deg(b) + j] = (r[i - deg(b) + j] + p - mulmod(c, b[j], p)) % p;
  }
  trim(q);
  trim(r);
}

ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly q, r;
  divmod(a, b, q, r, p);
  return r;
}

ModPoly monic(const ModPoly& a, u64 p) {
  if (a.empty()) return a;
  return scale(a, invmod(a.back(), p), p);
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// s*a + t*b = 1 for coprime a, b.
void xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t, u64 p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    divmod(r0, r1, q, r, p);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = invmod(r0.back(), p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
}

ModPoly powmod_poly(ModPoly base, const Integer& e, const ModPoly& f, u64 p) {
  ModPoly r{1};
  base = rem(base, f, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = rem(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base, p), f, p);
  }
  return r;
}

ModPoly derivative(const ModPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
  trim(r);
  return r;
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly xp{0, 1};
  ModPoly h = xp;
  int i = 0;
  while (deg(f) >= 2 * (i + 1)) {
    ++i;
    h = powmod_poly(h, Integer(static_cast<unsigned long>(p)), f, p);
    ModPoly g = gcd(f, sub(h, xp, p), p);
    if (deg(g) > 0) {
      out.emplace_back(g, i);
      ModPoly q, r;
      divmod(f, g, q, r, p);
      f = q;
      h = rem(h, f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

void equal_degree(const ModPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, d);
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (;;) {
    ModPoly a(deg(f));
    for (auto& v : a) v = dist(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly g = gcd(f, a, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      ModPoly q, r;
      divmod(f, g, q, r, p);
      equal_degree(g, d, p, rng, out);
      equal_degree(monic(q, p), d, p, rng, out);
      return;
    }
    ModPoly b = sub(powmod_poly(a, e, f, p), ModPoly{1}, p);
    g = gcd(f, b, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      ModPoly q, r;
      divmod(f, g, q, r, p);
      equal_degree(g, d, p, rng, out);
      equal_degree(monic(q, p), d, p, rng, out);
      return;
    }
  }
}

// Integer polynomial helpers for lifting, coefficients reduced mod m (non-negative).
Poly mod_poly(const Poly& a, const Integer& m) {
  std::vector<Integer> c = a.coeffs();
  for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return Poly(std::move(c));
}

Poly symmetric(const Poly& a, const Integer& m) {
  Integer half = m / 2;
  std::vector<Integer> c = a.coeffs();
  for (auto& v : c) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
  }
  return Poly(std::move(c));
}

Poly lift_poly(const ModPoly& a) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = static_cast<unsigned long>(a[i]);
  return Poly(std::move(c));
}

// Lift f = g*h (mod p), g monic, until the modulus reaches target.
void hensel_pair(const Poly& f, Poly& g, Poly& h, u64 p, const Integer& target) {
  ModPoly gp = reduce(g, p), hp = reduce(h, p), s, t;
  xgcd(gp, hp, s, t, p);
  Integer pm = static_cast<unsigned long>(p);
  while (pm < target) {
    Poly diff = f - g * h;
    Poly e = diff.divexact(pm);
    ModPoly ep = reduce(e, p);
    ModPoly q, tau;
    divmod(mul(t, ep, p), gp, q, tau, p);
    ModPoly sigma = add(mul(s, ep, p), mul(q, hp, p), p);
    Integer next = pm * static_cast<unsigned long>(p);
    g = mod_poly(g + lift_poly(tau) * pm, next);
    h = mod_poly(h + lift_poly(sigma) * pm, next);
    pm = next;
  }
}

std::vector<Poly> zassenhaus(const Poly& f) {
  static const u64 primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                               71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
  const Integer& lc = f.lead();
  u64 best_p = 0;
  std::size_t best_count = 0;
  int tried = 0;
  for (u64 p : primes) {
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    ModPoly fp = monic(reduce(f, p), p);
    if (deg(gcd(fp, derivative(fp, p), p)) > 0) continue;
    std::size_t count = 0;
    for (auto& [g, d] : distinct_degree(fp, p)) count += deg(g) / d;
    if (count == 1) return {f};
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
    }
    if (++tried >= 5) break;
  }
  if (best_p == 0) throw Error(ErrorKind::InvalidArgument, "no suitable prime for factorization");
  u64 p = best_p;
  std::mt19937_64 rng(0x5eed);
  ModPoly fp = monic(reduce(f, p), p);
  std::vector<ModPoly> modfactors;
  for (auto& [g, d] : distinct_degree(fp, p)) equal_degree(monic(g, p), d, p, rng, modfactors);

  // Coefficient bound for any factor, times the leading coefficient.
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Integer bound = sqrt(norm2) + 1;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), f.degree());
  bound *= abs(lc);
  Integer target = 2 * bound + 1;

  // Sequential multifactor lift.
  std::vector<Poly> lifted;
  Poly rest = f;
  for (std::size_t i = 0; i + 1 < modfactors.size(); ++i) {
    ModPoly others{1};
    for (std::size_t j = i + 1; j < modfactors.size(); ++j) others = mul(others, modfactors[j], p);
    u64 lcp = mpz_fdiv_ui(lc.get_mpz_t(), p);
    Poly g = lift_poly(modfactors[i]);
    Poly h = lift_poly(scale(others, lcp, p));
    hensel_pair(rest, g, h, p, target);
    lifted.push_back(g);
    rest = h;
  }
  Integer modulus = static_cast<unsigned long>(p);
  while (modulus < target) modulus *= static_cast<unsigned long>(p);
  lifted.push_back(mod_poly(rest, modulus));
  // Last entry carries lc; make it monic mod modulus.
  {
    Poly& last = lifted.back();
    Integer inv;
    mpz_invert(inv.get_mpz_t(), last.lead().get_mpz_t(), modulus.get_mpz_t());
    last = mod_poly(last * inv, modulus);
  }

  std::vector<Poly> result;
  Poly cur = f;
  std::vector<Poly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      Poly prod = Poly::constant(cur.lead());
      for (std::size_t i : idx) prod = mod_poly(prod * pool[i], modulus);
      Poly cand = symmetric(prod, modulus).primitive();
      Poly q;
      if (divides(cand, cur, &q)) {
        result.push_back(cand);
        cur = q.primitive();
        std::vector<Poly> np;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
        pool = std::move(np);
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.degree() > 0) result.push_back(cur.primitive());
  return result;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> d;
  for (Integer i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i * i != n) d.push_back(n / i);
    }
  }
  return d;
}

// Irreducible factors of a primitive square-free polynomial with nonzero constant term.
void factor_squarefree(Poly f, std::vector<Poly>& out) {
  if (f.degree() <= 1) {
    if (f.degree() == 1) out.push_back(f.primitive());
    return;
  }
  const Integer limit = 1000000;
  if (abs(f.coeff(0)) <= limit && abs(f.lead()) <= limit) {
    auto dp = divisors(f.coeff(0));
    auto dq = divisors(f.lead());
    std::sort(dp.begin(), dp.end());
    std::sort(dq.begin(), dq.end());
    bool again = true;
    while (again && f.degree() >= 2) {
      again = false;
      for (const auto& q : dq) {
        if (f.lead() % q != 0) continue;
        for (const auto& a : dp) {
          if (f.coeff(0) % a != 0) continue;
          Integer g;
          mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
          if (g != 1) continue;
          for (int sign : {1, -1}) {
            Poly lin(std::vector<Integer>{-sign * a, q});
            Poly quo;
            if (divides(lin, f, &quo)) {
              out.push_back(lin.primitive());
              f = quo;
              again = true;
              break;
            }
          }
          if (again || f.degree() < 2) break;
        }
        if (again || f.degree() < 2) break;
      }
    }
    if (f.degree() == 1) {
      out.push_back(f.primitive());
      return;
    }
    if (f.degree() <= 3) {
      out.push_back(f.primitive());
      return;
    }
  }
  for (auto& g : zassenhaus(f.primitive())) out.push_back(g.primitive());
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() <= 0) return out;
  Poly a = p.primitive();
  Poly b = a.derivative();
  Poly c = gcd(a, b);
  Poly w, y;
  divides(c, a, &w);
  divides(c, b, &y);
  Poly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g.primitive(), i);
    Poly nw, ny;
    divides(g, w, &nw);
    divides(g, z, &ny);
    w = nw;
    z = ny - w.derivative();
    ++i;
  }
  return out;
}

Factorization factor(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "factor of zero polynomial");
  Factorization r;
  r.unit = p.content();
  if (p.lead() < 0) r.unit = -r.unit;
  Poly f = p.divexact(r.unit);
  std::map<Poly, int> acc;
  int k = f.low_order();
  if (k > 0) {
    acc[Poly::x()] += k;
    f = f.shift_down(k);
  }
  for (auto& [s, mult] : squarefree_decomposition(f)) {
    std::vector<Poly> irr;
    factor_squarefree(s, irr);
    for (auto& g : irr) acc[g] += mult;
  }
  for (auto& [g, e] : acc) r.factors.emplace_back(g, e);
  return r;
}

}  // namespace polylog
