#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polylog/prefix.hpp"

namespace polylog {

// Interned irreducible primitive polynomial with positive leading coefficient.
class Entry {
 public:
  static Entry intern(const Poly& p);
  const Poly& poly() const { return *p_; }
  friend bool operator==(Entry a, Entry b) { return a.p_ == b.p_; }
  friend bool operator!=(Entry a, Entry b) { return a.p_ != b.p_; }
  friend bool operator<(Entry a, Entry b) { return a.p_ != b.p_ && *a.p_ < *b.p_; }

 private:
  explicit Entry(const Poly* p) : p_(p) {}
  const Poly* p_;
};

using Word = std::vector<Entry>;

// Canonical symbol: rational combination of words over irreducible entries.
class Symbol {
 public:
  using Map = std::map<Word, Rational>;

  Symbol() = default;
  static Symbol constant(const Rational& c);  // c times the empty word

  void add(const Word& w, const Rational& c);
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::optional<int> weight() const;  // nullopt when zero; throws NonUniformWeight if mixed

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(const Rational& k);
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator*(Symbol a, const Rational& k) { return a *= k; }
  Symbol operator-() const { return *this * Rational(-1); }
  friend bool operator==(const Symbol& a, const Symbol& b) { return a.terms_ == b.terms_; }

  std::string str() const;
  TokenSeq tokens() const;

 private:
  Map terms_;
};

// Entry-level factorization with constants dropped: f -> {(p_i, e_i)}.
std::vector<std::pair<Entry, int>> entry_factors(const RationalFunc& f);

// Unexpanded symbol with arbitrary rational-function entries (scrambled or parsed forms).
struct RawTerm {
  Rational coeff;
  std::vector<RationalFunc> entries;
};

struct RawSymbol {
  std::vector<RawTerm> terms;
  std::string str() const;
  TokenSeq tokens() const;
};

Symbol expand_product_rule(const RawSymbol& s);
RawSymbol to_raw(const Symbol& s);

Symbol shuffle(const Symbol& a, const Symbol& b);

// Symbol together with its transcendental weight, for building symbols of composite expressions.
struct Graded {
  Symbol symbol;
  int weight = 0;
  bool x_free = true;

  static Graded rational(const Rational& c);
  static Graded transcendental_constant(int weight);
};

Graded graded_add(const std::vector<Graded>& parts);
Graded graded_mul(const Graded& a, const Graded& b);
Graded graded_of(const Expr& e);

// Throws NonUniformWeight and UnsupportedNode.
Symbol symbol_of(const Expr& e);

// Letter of a Goncharov polylogarithm: a rational constant, or the sum over all roots of a polynomial.
struct RootSum {
  Poly poly;
};
using GLetter = std::variant<Rational, RootSum>;

Symbol symbol_of_G(const std::vector<GLetter>& letters, const RationalFunc& arg = RationalFunc::x());

Symbol antisymmetric_part(const Symbol& s);  // throws WrongWeight unless weight 2
bool equivalent_mod_symmetric(const Expr& f1, const Expr& f2);

// Symbol text and prefix forms.
RawSymbol parse_symbol_prefix(const TokenSeq& tokens);
std::string entry_str(const RationalFunc& f);

// Scramble moves that preserve the expanded symbol.
struct SymbolMove {
  enum class Kind { Product, Quotient, Power, Split } kind;
  std::size_t term = 0;
  std::size_t position = 0;
  Poly g;           // Product/Quotient
  int exponent = 2;  // Power
  std::size_t factor = 0;  // Split: which irreducible factor to peel off
};

RawSymbol apply_symbol_move(const RawSymbol& s, const SymbolMove& m);
// Up to n_moves random moves (n_moves <= 5); throws TokenBudgetExceeded past max_tokens.
RawSymbol symbol_scramble(const RawSymbol& s, int n_moves, std::mt19937_64& rng,
                          std::size_t max_tokens = kMaxSymbolTokens);

}  // namespace polylog
