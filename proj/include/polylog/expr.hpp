#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polylog/rational_func.hpp"

namespace polylog {

class Expr {
 public:
  enum class Kind { Int, Rat, Var, Add, Mul, Pow, Ln, Li };

  Expr();  // integer 0

  static Expr integer(const Integer& v);
  static Expr rational(const Rational& v);  // folds to integer when the denominator is 1
  static Expr var();
  // Flattens nested sums/products and folds constants; may collapse to a single child.
  static Expr add(std::vector<Expr> children);
  static Expr mul(std::vector<Expr> children);
  static Expr pow(const Expr& base, long exponent);
  static Expr ln(const Expr& arg);
  static Expr li(int weight, const Expr& arg);

  static Expr from_rational_func(const RationalFunc& f);
  static Expr from_poly(const Poly& p);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Int || kind() == Kind::Rat; }
  Rational value() const;  // Int or Rat
  const std::vector<Expr>& children() const;
  const Expr& base() const;  // Pow
  long exponent() const;     // Pow
  const Expr& arg() const;   // Ln, Li
  int weight() const;        // Li
  bool depends_on_x() const;

  std::string str() const;  // human-readable infix

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Throws NotRational when e contains Ln or Li.
RationalFunc canonicalize_rational(const Expr& e);

}  // namespace polylog
