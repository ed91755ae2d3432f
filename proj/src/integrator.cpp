#include "polylog/integrator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "polylog/error.hpp"

namespace polylog {

namespace {

using Pair = std::pair<Entry, Entry>;
using Wedge = std::map<Pair, Rational>;  // coefficient of p (x) q - q (x) p with p < q

void require_weight2(const Symbol& s) {
  auto w = s.weight();
  if (w && *w != 2) throw Error(ErrorKind::WrongWeight, "integration needs weight 2, got " + std::to_string(*w));
}

Wedge wedge_of(const Symbol& s) {
  Wedge out;
  for (const auto& [w, c] : s.terms()) {
    if (w[0] == w[1]) continue;
    bool fwd = w[0] < w[1];
    Rational& v = out[fwd ? Pair{w[0], w[1]} : Pair{w[1], w[0]}];
    v += fwd ? c : Rational(-c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Symbol of Li2(g) is -(1-g) (x) g.
Symbol li2_symbol(const RationalFunc& g) {
  Symbol out;
  auto a = entry_factors(g.one_minus());
  auto b = entry_factors(g);
  for (auto& [p, i] : a)
    for (auto& [q, j] : b) out.add({p, q}, Rational(-i * j));
  return out;
}

// ln argument written with a positive constant term when possible.
Expr log_arg(const Poly& p) {
  Poly q = p;
  if (q.coeff(0) < 0) q *= Integer(-1);
  return Expr::from_poly(q);
}

struct Solution {
  std::vector<std::pair<Rational, RationalFunc>> li2;
  std::vector<std::tuple<Rational, Poly, Poly>> logs;

  Expr expr(const std::optional<RationalFunc>& inner = std::nullopt) const {
    std::vector<Expr> parts;
    for (const auto& [c, g] : li2) {
      RationalFunc h = inner ? g.compose(*inner) : g;
      parts.push_back(Expr::mul({Expr::rational(c), Expr::li(2, Expr::from_rational_func(h))}));
    }
    for (const auto& [c, p, q] : logs) {
      auto arg = [&](const Poly& f) {
        if (!inner) return log_arg(f);
        return Expr::from_rational_func(RationalFunc(f).compose(*inner));
      };
      parts.push_back(Expr::mul({Expr::rational(c), Expr::ln(arg(p)), Expr::ln(arg(q))}));
    }
    if (parts.empty()) return Expr::integer(0);
    return Expr::add(std::move(parts));
  }
};

Symbol transpose(const Symbol& s) {
  Symbol out;
  for (const auto& [w, c] : s.terms()) out.add({w[1], w[0]}, c);
  return out;
}

void split_symmetric(const Symbol& s, Solution& sol, Symbol& remainder) {
  std::map<Pair, Rational> sym;
  for (const auto& [w, c] : s.terms()) {
    Pair key = w[1] < w[0] ? Pair{w[1], w[0]} : Pair{w[0], w[1]};
    sym[key] += c;
  }
  for (const auto& [k, c] : sym) {
    if (c == 0) continue;
    // (p (x) q + q (x) p)/2 * c -> c/2 ln p ln q; diagonal p (x) p * c -> c/2 ln^2 p
    sol.logs.emplace_back(c / 2, k.first.poly(), k.second.poly());
  }
  remainder = (s - transpose(s)) * Rational(1, 2);
}

struct Candidate {
  RationalFunc g;
  Wedge wedge;
};

bool candidate_less(const RationalFunc& a, const RationalFunc& b) {
  auto size = [](const RationalFunc& f) { return f.num().degree() + f.den().degree(); };
  if (size(a) != size(b)) return size(a) < size(b);
  return a < b;
}

// Products of alphabet polynomials (square-free, at most four factors) of the form a + b y^n.
std::map<int, std::vector<Poly>> uniform_powers(const std::vector<Poly>& alphabet) {
  std::map<int, std::vector<Poly>> out;
  std::set<Poly> seen;
  constexpr int kMaxFactors = 4, kMaxDegree = 8;
  auto rec = [&](auto&& self, std::size_t start, const Poly& acc, int used) -> void {
    if (used > 0) {
      int n = binomial_power(acc);
      if (n > 0 && seen.insert(acc).second) out[n].push_back(acc);
    }
    if (used == kMaxFactors) return;
    for (std::size_t i = start; i < alphabet.size(); ++i) {
      if (acc.degree() + alphabet[i].degree() > kMaxDegree) continue;
      self(self, i + 1, acc * alphabet[i], used + 1);
    }
  };
  rec(rec, 0, Poly::constant(1), 0);
  return out;
}

std::vector<Candidate> candidates(const std::set<Entry>& alphabet) {
  std::vector<Poly> polys;
  bool has_y = false;
  Poly y = Poly::x();
  for (Entry e : alphabet) {
    if (e.poly() == y)
      has_y = true;
    else
      polys.push_back(e.poly());
  }
  std::vector<RationalFunc> gs;
  for (auto& [n, fs] : uniform_powers(polys)) {
    std::vector<Poly> pool = fs;
    if (has_y) pool.push_back(pow(y, n));
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        const Poly& f = pool[i];
        const Poly& g = pool[j];
        Integer a = f.coeff(0), b = f.coeff(n), c = g.coeff(0), d = g.coeff(n);
        Integer det = a * d - b * c;
        if (det == 0) continue;
        Poly num = g;
        num *= b;
        gs.push_back(RationalFunc(num, Poly::constant(-det)));
      }
  }
  std::sort(gs.begin(), gs.end(), candidate_less);
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
  std::vector<Candidate> out;
  out.reserve(gs.size());
  for (auto& g : gs) {
    Wedge w = wedge_of(li2_symbol(g));
    if (!w.empty()) out.push_back({g, std::move(w)});
  }
  return out;
}

// Solves sum_k lambda_k cand_k = target on the consistent rows; free columns are zero.
std::vector<Rational> solve(const std::vector<Candidate>& cands, const Wedge& target) {
  std::map<Pair, std::size_t> rows;
  for (auto& [k, v] : target) rows.emplace(k, rows.size());
  for (auto& c : cands)
    for (auto& [k, v] : c.wedge) rows.emplace(k, rows.size());
  std::size_t n = cands.size();
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j < n; ++j)
    for (auto& [k, v] : cands[j].wedge) m[rows.at(k)][j] = v;
  for (auto& [k, v] : target) m[rows.at(k)][n] = v;

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][col];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  std::vector<Rational> lambda(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) lambda[pivots[i]] = m[i][n];
  return lambda;
}

struct Attempt {
  Solution sol;
  Symbol residual;
  std::vector<std::string> trace;
};

Attempt run(const Symbol& s, bool feeding) {
  Attempt out;
  Symbol remainder;
  Solution sym;
  split_symmetric(s, sym, remainder);
  if (!sym.logs.empty()) out.trace.push_back("symmetric: " + std::to_string(sym.logs.size()) + " log products");
  if (remainder.is_zero()) {
    out.sol = sym;
    return out;
  }

  std::set<Entry> alphabet;
  for (const auto& [w, c] : s.terms()) alphabet.insert(w.begin(), w.end());
  Wedge target = wedge_of(s);
  auto attempt = [&](const std::set<Entry>& alpha, Solution& sol) {
    auto cands = candidates(alpha);
    auto lambda = solve(cands, target);
    Symbol rest = s;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (lambda[k] == 0) continue;
      sol.li2.emplace_back(lambda[k], cands[k].g);
      rest -= li2_symbol(cands[k].g) * lambda[k];
    }
    return rest;
  };

  Solution sol;
  Symbol rest = attempt(alphabet, sol);
  if (feeding && !wedge_of(rest).empty()) {
    std::set<Entry> fed = alphabet;
    for (const Poly& p : {Poly::x(), Poly{1, 1}, Poly{-1, 1}}) fed.insert(Entry::intern(p));
    if (fed.size() != alphabet.size()) {
      Solution sol2;
      Symbol rest2 = attempt(fed, sol2);
      if (wedge_of(rest2).size() < wedge_of(rest).size()) {
        out.trace.push_back("feeding: alphabet extended by y, 1+y, 1-y");
        sol = std::move(sol2);
        rest = std::move(rest2);
      }
    }
  }
  for (auto& [c, g] : sol.li2)
    out.trace.push_back("uniform-power: " + Expr::mul({Expr::rational(c), Expr::li(2, Expr::from_rational_func(g))}).str());
  Solution logs;
  split_symmetric(rest, logs, out.residual);
  out.sol = std::move(sol);
  for (auto& l : logs.logs) out.sol.logs.push_back(l);
  if (!out.residual.is_zero()) out.trace.push_back("residual: " + std::to_string(out.residual.size()) + " words");
  return out;
}

bool is_monomial(const Poly& p) {
  int nz = 0;
  for (const auto& c : p.coeffs()) nz += c != 0;
  return nz == 1 && p.degree() > 0;
}

}  // namespace

int binomial_power(const Poly& p) {
  if (p.degree() < 1 || p.coeff(0) == 0) return 0;
  for (int i = 1; i < p.degree(); ++i)
    if (p.coeff(i) != 0) return 0;
  return p.degree();
}

SymmetricSplit integrate_symmetric(const Symbol& s) {
  require_weight2(s);
  Solution sol;
  Symbol rem;
  split_symmetric(s, sol, rem);
  return {sol.expr(), rem};
}

Expr integrate_uniform_power(const Rational& k, const Poly& f0, const Poly& g0) {
  Poly f = f0, g = g0;
  Rational scale = k;
  int nf = is_monomial(f) ? 0 : binomial_power(f);
  int ng = is_monomial(g) ? 0 : binomial_power(g);
  if ((!nf && !is_monomial(f)) || (!ng && !is_monomial(g)))
    throw Error(ErrorKind::InvalidArgument, "entries are not of the form a + b y^n");
  int n = std::max(nf, ng);
  if (n == 0) throw Error(ErrorKind::DegenerateDeterminant, "both entries are monomials");
  if (nf && ng && nf != ng) throw Error(ErrorKind::InvalidArgument, "entries have different powers");
  // (a + b y^n) (x) y^m = (m/n) (a + b y^n) (x) y^n
  auto rescale = [&](Poly& p) {
    if (!is_monomial(p)) return;
    Rational m(p.degree(), n);
    m.canonicalize();
    scale *= m;
    p = Poly::monomial(p.lead(), n);
  };
  rescale(f);
  rescale(g);
  Integer a = f.coeff(0), b = f.coeff(n), c = g.coeff(0), d = g.coeff(n);
  Integer det = a * d - b * c;
  if (det == 0) throw Error(ErrorKind::DegenerateDeterminant, "entries are proportional");
  Poly num = g;
  num *= b;
  RationalFunc h(num, Poly::constant(-det));
  return Expr::mul({Expr::rational(-scale), Expr::li(2, Expr::from_rational_func(h))});
}

RawSymbol combine_terms(const RawSymbol& s) {
  RawSymbol cur = s;
  auto poly_of = [](const RationalFunc& f) -> std::optional<Poly> {
    if (!f.den().is_constant() || f.num().degree() < 1) return std::nullopt;
    return f.num();
  };
  // merges: equal coefficients, entries equal except at one slot whose product is a + b y^n
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.terms.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < cur.terms.size() && !changed; ++j) {
        auto& ti = cur.terms[i];
        auto& tj = cur.terms[j];
        if (ti.coeff != tj.coeff || ti.entries.size() != tj.entries.size()) continue;
        std::optional<std::size_t> slot;
        bool ok = true;
        for (std::size_t p = 0; p < ti.entries.size() && ok; ++p) {
          if (ti.entries[p] == tj.entries[p]) continue;
          if (slot) ok = false;
          slot = p;
        }
        if (!ok || !slot) continue;
        auto pi = poly_of(ti.entries[*slot]);
        auto pj = poly_of(tj.entries[*slot]);
        if (!pi || !pj) continue;
        Poly prod = *pi * *pj;
        int n = binomial_power(prod);
        if (n == 0 || n <= std::max(binomial_power(*pi), binomial_power(*pj))) continue;
        ti.entries[*slot] = RationalFunc(prod);
        cur.terms.erase(cur.terms.begin() + j);
        changed = true;
      }
  }
  // feeding: P -> P (1 +- y) / (1 +- y) when P (1 +- y) is a + b y^n
  RawSymbol out;
  for (const auto& t : cur.terms) {
    bool fed = false;
    for (std::size_t p = 0; p < t.entries.size() && !fed; ++p) {
      auto pp = poly_of(t.entries[p]);
      if (!pp || binomial_power(*pp) || is_monomial(*pp)) continue;
      for (const Poly& feed : {Poly{1, 1}, Poly{1, -1}}) {
        Poly prod = *pp * feed;
        if (!binomial_power(prod)) continue;
        RawTerm a = t, b = t;
        a.entries[p] = RationalFunc(prod);
        b.entries[p] = RationalFunc(feed);
        b.coeff = -b.coeff;
        out.terms.push_back(std::move(a));
        out.terms.push_back(std::move(b));
        fed = true;
        break;
      }
    }
    if (!fed) out.terms.push_back(t);
  }
  return out;
}

Symbol substitute_variable(const Symbol& s, const RationalFunc& sub) {
  const Poly& n = sub.num();
  const Poly& d = sub.den();
  if (n.degree() > 1 || d.degree() > 1 || sub.is_constant())
    throw Error(ErrorKind::NonInvertibleSubstitution, "substitution must be (a y + b)/(c y + d): " + sub.str());
  Integer a = n.coeff(1), b = n.coeff(0), c = d.coeff(1), dd = d.coeff(0);
  if (a * dd - b * c == 0) throw Error(ErrorKind::NonInvertibleSubstitution, "degenerate substitution");
  // y = (d z - b) / (-c z + a)
  RationalFunc inv(Poly({Integer(-b), dd}), Poly({a, Integer(-c)}));
  RawSymbol raw;
  for (const auto& [w, coeff] : s.terms()) {
    RawTerm t{coeff, {}};
    for (Entry e : w) t.entries.push_back(RationalFunc(e.poly()).compose(inv));
    raw.terms.push_back(std::move(t));
  }
  return expand_product_rule(raw);
}

IntegrationResult integrate_weight2(const Symbol& s, const IntegrationOptions& opts) {
  require_weight2(s);
  IntegrationResult res;
  Attempt base = run(s, opts.feeding);
  res.function = base.sol.expr();
  res.residual = base.residual;
  res.trace = base.trace;

  if (!res.residual.is_zero() && opts.allow_substitution) {
    std::vector<RationalFunc> subs{RationalFunc(Poly{1, -1}, Poly{1, 1}), RationalFunc(Poly{1, 1}, Poly{1, -1})};
    subs.insert(subs.end(), opts.extra_substitutions.begin(), opts.extra_substitutions.end());
    for (const auto& sub : subs) {
      Symbol sz = substitute_variable(s, sub);
      Attempt a = run(sz, opts.feeding);
      if (!a.residual.is_zero()) continue;
      Expr fy = a.sol.expr(sub);
      Symbol rest = s - symbol_of(fy);
      if (rest.size() >= res.residual.size()) continue;
      res.function = fy;
      res.residual = rest;
      res.substitution = sub;
      res.function_substituted = a.sol.expr();
      res.trace.push_back("substitution: z = " + sub.str());
      for (auto& t : a.trace) res.trace.push_back("  " + t);
      break;
    }
  }

  if (!(symbol_of(res.function) + res.residual == s))
    throw std::logic_error("integration soundness check failed");
  return res;
}

}  // namespace polylog
