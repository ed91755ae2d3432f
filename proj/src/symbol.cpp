#include "polylog/symbol.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "polylog/error.hpp"
#include "polylog/factor.hpp"

namespace polylog {
namespace {

struct Registry {
  std::shared_mutex mu;
  std::unordered_map<Poly, std::unique_ptr<Poly>, PolyHash> entries;
};

Registry& registry() {
  static Registry r;
  return r;
}

struct FactorCache {
  std::mutex mu;
  std::unordered_map<Poly, std::vector<std::pair<Entry, int>>, PolyHash> map;
  static constexpr std::size_t kCap = 200000;
};

FactorCache& factor_cache() {
  static FactorCache c;
  return c;
}

std::vector<std::pair<Entry, int>> poly_factors(const Poly& p) {
  auto& cache = factor_cache();
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.map.find(p);
    if (it != cache.map.end()) return it->second;
  }
  std::vector<std::pair<Entry, int>> out;
  for (auto& [g, e] : factor(p).factors) out.emplace_back(Entry::intern(g), e);
  std::lock_guard lock(cache.mu);
  if (cache.map.size() >= FactorCache::kCap) cache.map.clear();
  cache.map.emplace(p, out);
  return out;
}

void shuffle_words(const Word& a, std::size_t i, const Word& b, std::size_t j, Word& cur, const Rational& c,
                   Symbol& out) {
  if (i == a.size() && j == b.size()) {
    out.add(cur, c);
    return;
  }
  if (i < a.size()) {
    cur.push_back(a[i]);
    shuffle_words(a, i + 1, b, j, cur, c, out);
    cur.pop_back();
  }
  if (j < b.size()) {
    cur.push_back(b[j]);
    shuffle_words(a, i, b, j + 1, cur, c, out);
    cur.pop_back();
  }
}

std::string coeff_str(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return "(" + c.get_str() + ")";
}

template <class Terms, class EntryFn>
std::string render_terms(const Terms& terms, EntryFn entry_of) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [coeff, word] : terms) {
    Rational mag = abs(coeff);
    if (first) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    if (word.empty()) {
      os << coeff_str(mag);
      continue;
    }
    if (mag != 1) os << coeff_str(mag) << "*";
    for (std::size_t i = 0; i < word.size(); ++i) os << (i ? " ox " : "") << entry_of(word[i]);
  }
  if (first) return "0";
  return os.str();
}

void append_coeff(TokenSeq& out, const Rational& c) {
  if (c.get_den() == 1) {
    append_integer(out, c.get_num());
  } else {
    out.push_back(Token::Div);
    append_integer(out, c.get_num());
    append_integer(out, c.get_den());
  }
}

template <class Terms, class EntryFn>
TokenSeq prefix_terms(const Terms& terms, EntryFn entry_expr) {
  TokenSeq out;
  if (terms.empty()) {
    append_integer(out, 0);
    return out;
  }
  std::size_t n = 0;
  for (const auto& [coeff, word] : terms) {
    if (++n < terms.size()) out.push_back(Token::Add);
    if (coeff != 1) {
      out.push_back(Token::Mul);
      append_coeff(out, coeff);
    }
    if (word.empty()) {
      append_integer(out, 1);
      continue;
    }
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      out.push_back(Token::Ox);
      append_prefix(out, entry_expr(word[i]));
    }
    append_prefix(out, entry_expr(word.back()));
  }
  return out;
}

}  // namespace

Entry Entry::intern(const Poly& p) {
  auto& r = registry();
  {
    std::shared_lock lock(r.mu);
    auto it = r.entries.find(p);
    if (it != r.entries.end()) return Entry(it->second.get());
  }
  std::unique_lock lock(r.mu);
  auto [it, inserted] = r.entries.emplace(p, nullptr);
  if (inserted) it->second = std::make_unique<Poly>(p);
  return Entry(it->second.get());
}

Symbol Symbol::constant(const Rational& c) {
  Symbol s;
  s.add({}, c);
  return s;
}

void Symbol::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> Symbol::weight() const {
  if (terms_.empty()) return std::nullopt;
  std::size_t w = terms_.begin()->first.size();
  for (const auto& [word, c] : terms_)
    if (word.size() != w) throw Error(ErrorKind::NonUniformWeight, "symbol words of different lengths");
  return static_cast<int>(w);
}

Symbol& Symbol::operator+=(const Symbol& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Symbol& Symbol::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= k;
  return *this;
}

std::string entry_str(const RationalFunc& f) {
  auto poly_str = [](const Poly& p) {
    Poly q = p;
    if (q.coeff(0) < 0 || (q.coeff(0) == 0 && q.lead() < 0)) q = -q;
    std::string s = q.str();
    if (s.find_first_not_of("x^0123456789") == std::string::npos) return s;
    return "(" + s + ")";
  };
  if (f.den().is_one()) return poly_str(f.num());
  std::string n = f.num().str();
  std::string d = f.den().str();
  return "((" + n + ")/(" + d + "))";
}

std::string Symbol::str() const {
  std::vector<std::pair<Rational, Word>> terms;
  for (const auto& [w, c] : terms_) terms.emplace_back(c, w);
  return render_terms(terms, [](Entry e) { return entry_str(RationalFunc(e.poly())); });
}

TokenSeq Symbol::tokens() const {
  std::vector<std::pair<Rational, Word>> terms;
  for (const auto& [w, c] : terms_) terms.emplace_back(c, w);
  return prefix_terms(terms, [](Entry e) { return Expr::from_poly(e.poly()); });
}

std::string RawSymbol::str() const {
  std::vector<std::pair<Rational, std::vector<RationalFunc>>> t;
  for (const auto& r : terms) t.emplace_back(r.coeff, r.entries);
  return render_terms(t, [](const RationalFunc& f) { return entry_str(f); });
}

TokenSeq RawSymbol::tokens() const {
  std::vector<std::pair<Rational, std::vector<RationalFunc>>> t;
  for (const auto& r : terms) t.emplace_back(r.coeff, r.entries);
  return prefix_terms(t, [](const RationalFunc& f) { return Expr::from_rational_func(f); });
}

std::vector<std::pair<Entry, int>> entry_factors(const RationalFunc& f) {
  if (f.is_zero()) throw Error(ErrorKind::PoleEncountered, "symbol entry is zero");
  std::vector<std::pair<Entry, int>> out;
  if (f.num().degree() > 0) out = poly_factors(f.num());
  if (f.den().degree() > 0)
    for (auto& [e, k] : poly_factors(f.den())) out.emplace_back(e, -k);
  return out;
}

Symbol expand_product_rule(const RawSymbol& s) {
  Symbol out;
  for (const auto& t : s.terms) {
    if (t.coeff == 0) continue;
    bool vanishes = false;
    for (const auto& e : t.entries) vanishes = vanishes || e.is_constant();
    if (vanishes) continue;
    std::vector<std::vector<std::pair<Entry, int>>> fs;
    fs.reserve(t.entries.size());
    for (const auto& e : t.entries) fs.push_back(entry_factors(e));
    Word cur(t.entries.size(), Entry::intern(Poly::x()));
    auto rec = [&](auto&& self, std::size_t i, const Rational& c) -> void {
      if (i == fs.size()) {
        out.add(cur, c);
        return;
      }
      for (auto& [e, k] : fs[i]) {
        cur[i] = e;
        self(self, i + 1, c * k);
      }
    };
    rec(rec, 0, t.coeff);
  }
  return out;
}

RawSymbol to_raw(const Symbol& s) {
  RawSymbol r;
  for (const auto& [w, c] : s.terms()) {
    RawTerm t{c, {}};
    for (Entry e : w) t.entries.emplace_back(e.poly());
    r.terms.push_back(std::move(t));
  }
  return r;
}

Symbol shuffle(const Symbol& a, const Symbol& b) {
  Symbol out;
  Word cur;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) shuffle_words(wa, 0, wb, 0, cur, ca * cb, out);
  return out;
}

Graded Graded::rational(const Rational& c) { return {Symbol::constant(c), 0, true}; }

Graded Graded::transcendental_constant(int weight) { return {Symbol(), weight, true}; }

Graded graded_add(const std::vector<Graded>& parts) {
  Graded out;
  std::optional<int> w;
  for (const auto& p : parts) {
    if (p.x_free) continue;
    if (w && *w != p.weight)
      throw Error(ErrorKind::NonUniformWeight,
                  "terms of weight " + std::to_string(*w) + " and " + std::to_string(p.weight));
    w = p.weight;
  }
  if (w) {
    out.weight = *w;
    out.x_free = false;
    for (const auto& p : parts) {
      if (!p.x_free) {
        out.symbol += p.symbol;
      } else if (p.weight > *w) {
        throw Error(ErrorKind::NonUniformWeight, "constant of higher weight than the function");
      }
    }
    return out;
  }
  int maxw = 0;
  for (const auto& p : parts) maxw = std::max(maxw, p.weight);
  out.weight = maxw;
  if (maxw == 0)
    for (const auto& p : parts) out.symbol += p.symbol;
  return out;
}

Graded graded_mul(const Graded& a, const Graded& b) {
  return {shuffle(a.symbol, b.symbol), a.weight + b.weight, a.x_free && b.x_free};
}

Graded graded_of(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Int:
    case K::Rat: return Graded::rational(e.value());
    case K::Var: throw Error(ErrorKind::UnsupportedNode, "rational function of x outside ln/Li");
    case K::Add: {
      std::vector<Graded> parts;
      for (const auto& c : e.children()) parts.push_back(graded_of(c));
      return graded_add(parts);
    }
    case K::Mul: {
      Graded acc = Graded::rational(1);
      for (const auto& c : e.children()) acc = graded_mul(acc, graded_of(c));
      return acc;
    }
    case K::Pow: {
      Graded b = graded_of(e.base());
      if (e.exponent() < 0) {
        if (!b.x_free || b.weight != 0) throw Error(ErrorKind::UnsupportedNode, "negative power of a function");
        Rational v = b.symbol.is_zero() ? Rational(0) : b.symbol.terms().begin()->second;
        if (v == 0) throw Error(ErrorKind::ZeroDenominator, "division by zero");
        Rational inv = 1 / v;
        Rational r = 1;
        for (long i = 0; i < -e.exponent(); ++i) r *= inv;
        return Graded::rational(r);
      }
      Graded acc = Graded::rational(1);
      for (long i = 0; i < e.exponent(); ++i) acc = graded_mul(acc, b);
      return acc;
    }
    case K::Ln: {
      RationalFunc f = canonicalize_rational(e.arg());
      Graded g{expand_product_rule(RawSymbol{{RawTerm{1, {f}}}}), 1, !e.depends_on_x()};
      return g;
    }
    case K::Li: {
      RationalFunc f = canonicalize_rational(e.arg());
      RawTerm t{-1, {f.one_minus()}};
      for (int i = 1; i < e.weight(); ++i) t.entries.push_back(f);
      return {expand_product_rule(RawSymbol{{t}}), e.weight(), !e.depends_on_x()};
    }
  }
  return {};
}

Symbol symbol_of(const Expr& e) {
  Graded g = graded_of(e);
  if (g.weight == 0) return Symbol();
  return g.symbol;
}

Symbol symbol_of_G(const std::vector<GLetter>& letters, const RationalFunc& arg) {
  if (letters.empty() || letters.size() > 4)
    throw Error(ErrorKind::UnsupportedWeight, "G-function weight " + std::to_string(letters.size()));
  int roots = 0;
  RawTerm t{1, {}};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (const auto* a = std::get_if<Rational>(&*it)) {
      t.entries.push_back(arg - RationalFunc::constant(*a));
    } else {
      if (++roots > 1) throw Error(ErrorKind::UnsupportedNode, "more than one root-sum letter in a G-function");
      const Poly& p = std::get<RootSum>(*it).poly;
      if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "root-sum letter needs a non-constant polynomial");
      RationalFunc num(p);
      t.entries.push_back(num.compose(arg));
    }
  }
  return expand_product_rule(RawSymbol{{t}});
}

Symbol antisymmetric_part(const Symbol& s) {
  auto w = s.weight();
  if (!w) return Symbol();
  if (*w != 2) throw Error(ErrorKind::WrongWeight, "antisymmetric part needs weight 2, got " + std::to_string(*w));
  Symbol out;
  for (const auto& [word, c] : s.terms()) {
    out.add(word, c);
    out.add({word[1], word[0]}, -c);
  }
  return out;
}

bool equivalent_mod_symmetric(const Expr& f1, const Expr& f2) {
  return antisymmetric_part(symbol_of(f1) - symbol_of(f2)).is_zero();
}

namespace {

Rational read_coeff(PrefixReader& r) {
  if (r.peek() == Token::Div) {
    r.next();
    Integer p = r.integer();
    Integer q = r.integer();
    if (q == 0) throw Error(ErrorKind::ZeroDenominator, "coefficient denominator is zero");
    Rational c(p, q);
    c.canonicalize();
    return c;
  }
  return Rational(r.integer());
}

RawTerm read_term(PrefixReader& r) {
  RawTerm t{1, {}};
  if (r.peek() == Token::Mul) {
    r.next();
    t.coeff = read_coeff(r);
  }
  while (r.peek() == Token::Ox) {
    r.next();
    t.entries.push_back(canonicalize_rational(r.expr()));
  }
  t.entries.push_back(canonicalize_rational(r.expr()));
  return t;
}

}  // namespace

RawSymbol parse_symbol_prefix(const TokenSeq& tokens) {
  if (tokens.empty()) throw Error(ErrorKind::MalformedPrefix, "empty token sequence");
  RawSymbol s;
  if (tokens.size() == 2 && tokens[0] == Token::Plus && tokens[1] == Token::D0) return s;
  PrefixReader r(tokens);
  while (r.peek() == Token::Add) {
    r.next();
    s.terms.push_back(read_term(r));
  }
  s.terms.push_back(read_term(r));
  r.expect_end();
  return s;
}

RawSymbol apply_symbol_move(const RawSymbol& s, const SymbolMove& m) {
  if (m.term >= s.terms.size()) throw Error(ErrorKind::InvalidArgument, "move term index out of range");
  const RawTerm& t = s.terms[m.term];
  if (m.position >= t.entries.size()) throw Error(ErrorKind::InvalidArgument, "move position out of range");
  RawSymbol out = s;
  RawTerm& target = out.terms[m.term];
  RationalFunc& f = target.entries[m.position];
  switch (m.kind) {
    case SymbolMove::Kind::Product:
    case SymbolMove::Kind::Quotient: {
      if (m.g.degree() < 1) throw Error(ErrorKind::InvalidArgument, "move polynomial must be non-constant");
      RationalFunc g(m.g);
      bool product = m.kind == SymbolMove::Kind::Product;
      f = product ? f * g : f / g;
      RawTerm extra = t;
      extra.coeff = product ? -t.coeff : t.coeff;
      extra.entries[m.position] = g;
      out.terms.push_back(std::move(extra));
      break;
    }
    case SymbolMove::Kind::Power:
      if (m.exponent < 2 || m.exponent > 3) throw Error(ErrorKind::InvalidArgument, "power move exponent must be 2 or 3");
      f = f.pow(m.exponent);
      target.coeff /= m.exponent;
      break;
    case SymbolMove::Kind::Split: {
      std::vector<std::pair<Poly, int>> pieces;  // poly, +1 numerator / -1 denominator
      if (f.num().degree() > 0)
        for (auto& [g, e] : factor(f.num()).factors)
          for (int i = 0; i < e; ++i) pieces.emplace_back(g, 1);
      if (f.den().degree() > 0)
        for (auto& [g, e] : factor(f.den()).factors)
          for (int i = 0; i < e; ++i) pieces.emplace_back(g, -1);
      if (pieces.size() < 2 || m.factor >= pieces.size())
        throw Error(ErrorKind::InvalidArgument, "split move needs an entry with at least two factors");
      auto [p, sign] = pieces[m.factor];
      RationalFunc pf(p);
      f = sign > 0 ? f / pf : f * pf;
      RawTerm extra = t;
      extra.coeff = sign * t.coeff;
      extra.entries[m.position] = pf;
      out.terms.push_back(std::move(extra));
      break;
    }
  }
  return out;
}

RawSymbol symbol_scramble(const RawSymbol& s, int n_moves, std::mt19937_64& rng, std::size_t max_tokens) {
  if (n_moves < 0 || n_moves > 5) throw Error(ErrorKind::InvalidArgument, "between 0 and 5 scramble moves");
  RawSymbol cur = s;
  if (cur.terms.empty()) return cur;
  std::uniform_int_distribution<int> kind_dist(0, 3), deg_dist(1, 3), coef_dist(-3, 3), exp_dist(2, 3);
  for (int i = 0; i < n_moves; ++i) {
    SymbolMove m;
    m.term = std::uniform_int_distribution<std::size_t>(0, cur.terms.size() - 1)(rng);
    const RawTerm& t = cur.terms[m.term];
    if (t.entries.empty()) continue;
    m.position = std::uniform_int_distribution<std::size_t>(0, t.entries.size() - 1)(rng);
    int kind = kind_dist(rng);
    if (kind == 3) {
      const RationalFunc& f = t.entries[m.position];
      int pieces = 0;
      for (const auto* p : {&f.num(), &f.den()})
        if (p->degree() > 0)
          for (auto& [g, e] : factor(*p).factors) pieces += e;
      if (pieces < 2) {
        kind = std::uniform_int_distribution<int>(0, 2)(rng);
      } else {
        m.factor = std::uniform_int_distribution<std::size_t>(0, pieces - 1)(rng);
      }
    }
    m.kind = static_cast<SymbolMove::Kind>(kind);
    if (m.kind == SymbolMove::Kind::Product || m.kind == SymbolMove::Kind::Quotient) {
      int d = deg_dist(rng);
      std::vector<Integer> c(d + 1);
      for (auto& v : c) v = coef_dist(rng);
      if (c.back() == 0) c.back() = 1;
      m.g = Poly(c).primitive();
    } else if (m.kind == SymbolMove::Kind::Power) {
      m.exponent = exp_dist(rng);
    }
    cur = apply_symbol_move(cur, m);
    if (cur.tokens().size() > max_tokens)
      throw Error(ErrorKind::TokenBudgetExceeded, "scrambled symbol exceeds " + std::to_string(max_tokens) + " tokens");
  }
  return cur;
}

}  // namespace polylog
