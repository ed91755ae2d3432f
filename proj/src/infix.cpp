#include "polylog/infix.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "polylog/error.hpp"

namespace polylog {
namespace {

enum class Tk { Num, Ident, Op, End };

struct Lexeme {
  Tk kind;
  std::string text;
  std::size_t pos;
};

std::vector<Lexeme> lex(std::string_view s) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (s.compare(i, 3, "−") == 0) {
      out.push_back({Tk::Op, "-", i});
      i += 3;
      continue;
    }
    if (s.compare(i, 3, "⊗") == 0) {
      out.push_back({Tk::Ident, "ox", i});
      i += 3;
      continue;
    }
    if (s.compare(i, 2, "·") == 0) {
      out.push_back({Tk::Op, "*", i});
      i += 2;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tk::Num, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tk::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::string_view("+-*/^(),;").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tk::Op, std::string(1, static_cast<char>(c)), i});
      ++i;
      continue;
    }
    throw Error(ErrorKind::UnknownToken, "unexpected character '" + std::string(1, static_cast<char>(c)) + "' at " +
                                             std::to_string(i));
  }
  out.push_back({Tk::End, "", s.size()});
  return out;
}

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class K { Num, X, Add, Sub, Mul, Div, Neg, Pow, Li, Ln, G, Const, Root } k;
  Rational value;  // Num
  long n = 0;      // Pow exponent, Li weight, Const weight
  std::vector<AstPtr> kids;
};

AstPtr node(Ast::K k, std::vector<AstPtr> kids = {}, long n = 0) {
  auto a = std::make_shared<Ast>();
  a->k = k;
  a->kids = std::move(kids);
  a->n = n;
  return a;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : t_(lex(s)) {}

  AstPtr parse_all() {
    AstPtr e = sum();
    expect_end();
    return e;
  }

  const Lexeme& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool is_op(const char* op, std::size_t k = 0) const { return peek(k).kind == Tk::Op && peek(k).text == op; }
  bool is_ident(const char* id, std::size_t k = 0) const { return peek(k).kind == Tk::Ident && peek(k).text == id; }
  const Lexeme& next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }

  void expect(const char* op) {
    if (!is_op(op)) fail(std::string("expected '") + op + "'");
    next();
  }

  void expect_end() const {
    if (peek().kind != Tk::End) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::MalformedPrefix, msg + " at offset " + std::to_string(peek().pos));
  }

  AstPtr sum() {
    AstPtr a = product();
    while (is_op("+") || is_op("-")) {
      bool plus = next().text == "+";
      a = node(plus ? Ast::K::Add : Ast::K::Sub, {a, product()});
    }
    return a;
  }

  AstPtr product() {
    AstPtr a = unary();
    while (is_op("*") || is_op("/")) {
      bool times = next().text == "*";
      a = node(times ? Ast::K::Mul : Ast::K::Div, {a, unary()});
    }
    return a;
  }

  AstPtr unary() {
    if (is_op("-")) {
      next();
      return node(Ast::K::Neg, {unary()});
    }
    if (is_op("+")) {
      next();
      return unary();
    }
    return power();
  }

  long exponent() {
    bool neg = false;
    bool paren = false;
    if (is_op("(")) {
      next();
      paren = true;
    }
    if (is_op("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tk::Num) fail("expected integer exponent");
    long v = std::stol(next().text);
    if (paren) expect(")");
    return neg ? -v : v;
  }

  AstPtr power() {
    AstPtr a = atom();
    if (is_op("^")) {
      next();
      a = node(Ast::K::Pow, {a}, exponent());
    }
    return a;
  }

  AstPtr atom() {
    const Lexeme& l = peek();
    if (l.kind == Tk::Num) {
      next();
      auto a = node(Ast::K::Num);
      const_cast<Ast&>(*a).value = Rational(Integer(l.text));
      return a;
    }
    if (is_op("(")) {
      next();
      AstPtr e = sum();
      expect(")");
      return e;
    }
    if (l.kind == Tk::Ident) return call();
    fail("unexpected token '" + l.text + "'");
  }

  long int_literal() {
    if (peek().kind != Tk::Num) fail("expected integer");
    return std::stol(next().text);
  }

  AstPtr call() {
    std::string name = next().text;
    if (name == "x") return node(Ast::K::X);
    if (name == "pi") return node(Ast::K::Const, {}, 1);
    if (name == "zeta2") return node(Ast::K::Const, {}, 2);
    if (name == "zeta3") return node(Ast::K::Const, {}, 3);
    if (name == "Li2" || name == "Li3" || name == "Li4") {
      expect("(");
      AstPtr a = sum();
      expect(")");
      return node(Ast::K::Li, {a}, name[2] - '0');
    }
    if (name == "Li" || name == "polylog") {
      expect("(");
      long n = int_literal();
      expect(",");
      AstPtr a = sum();
      expect(")");
      return node(Ast::K::Li, {a}, n);
    }
    if (name == "ln" || name == "log") {
      expect("(");
      AstPtr a = sum();
      expect(")");
      return node(Ast::K::Ln, {a});
    }
    if (name == "zeta") {
      expect("(");
      long n = int_literal();
      expect(")");
      return node(Ast::K::Const, {}, n);
    }
    if (name == "root") {
      expect("(");
      AstPtr a = sum();
      expect(")");
      return node(Ast::K::Root, {a});
    }
    if (name == "G") {
      expect("(");
      std::vector<AstPtr> args{sum()};
      while (is_op(",") || is_op(";")) {
        next();
        args.push_back(sum());
      }
      expect(")");
      if (args.size() < 2) fail("G needs at least one letter and an argument");
      return node(Ast::K::G, std::move(args));
    }
    fail("unknown function or name '" + name + "'");
  }

 private:
  std::vector<Lexeme> t_;
  std::size_t i_ = 0;
};

Expr to_expr(const AstPtr& a) {
  using K = Ast::K;
  switch (a->k) {
    case K::Num: return Expr::rational(a->value);
    case K::X: return Expr::var();
    case K::Add: return Expr::add({to_expr(a->kids[0]), to_expr(a->kids[1])});
    case K::Sub: return Expr::add({to_expr(a->kids[0]), Expr::mul({Expr::integer(-1), to_expr(a->kids[1])})});
    case K::Mul: return Expr::mul({to_expr(a->kids[0]), to_expr(a->kids[1])});
    case K::Div: return Expr::mul({to_expr(a->kids[0]), Expr::pow(to_expr(a->kids[1]), -1)});
    case K::Neg: return Expr::mul({Expr::integer(-1), to_expr(a->kids[0])});
    case K::Pow: return Expr::pow(to_expr(a->kids[0]), a->n);
    case K::Li: return Expr::li(static_cast<int>(a->n), to_expr(a->kids[0]));
    case K::Ln: return Expr::ln(to_expr(a->kids[0]));
    case K::G:
    case K::Const:
    case K::Root:
      throw Error(ErrorKind::UnsupportedNode, "G-functions and transcendental constants only have a symbol-level reading");
  }
  return Expr();
}

Graded to_graded(const AstPtr& a) {
  using K = Ast::K;
  switch (a->k) {
    case K::Num: return Graded::rational(a->value);
    case K::X: throw Error(ErrorKind::UnsupportedNode, "rational function of x outside ln/Li/G");
    case K::Add: return graded_add({to_graded(a->kids[0]), to_graded(a->kids[1])});
    case K::Sub: {
      Graded b = to_graded(a->kids[1]);
      b.symbol *= -1;
      return graded_add({to_graded(a->kids[0]), b});
    }
    case K::Mul: return graded_mul(to_graded(a->kids[0]), to_graded(a->kids[1]));
    case K::Div: {
      Graded b = to_graded(a->kids[1]);
      if (!b.x_free || b.weight != 0 || b.symbol.is_zero())
        throw Error(ErrorKind::UnsupportedNode, "division by a non-rational quantity");
      Rational v = b.symbol.terms().begin()->second;
      Graded r = to_graded(a->kids[0]);
      r.symbol *= 1 / v;
      return r;
    }
    case K::Neg: {
      Graded r = to_graded(a->kids[0]);
      r.symbol *= -1;
      return r;
    }
    case K::Pow: {
      if (a->n < 0) {
        Graded b = to_graded(a->kids[0]);
        if (!b.x_free || b.weight != 0 || b.symbol.is_zero())
          throw Error(ErrorKind::UnsupportedNode, "negative power of a function");
        Rational v = b.symbol.terms().begin()->second, r = 1;
        for (long i = 0; i < -a->n; ++i) r /= v;
        return Graded::rational(r);
      }
      Graded b = to_graded(a->kids[0]);
      Graded acc = Graded::rational(1);
      for (long i = 0; i < a->n; ++i) acc = graded_mul(acc, b);
      return acc;
    }
    case K::Li:
    case K::Ln: return graded_of(to_expr(a));
    case K::Const: return Graded::transcendental_constant(static_cast<int>(a->n));
    case K::Root: throw Error(ErrorKind::UnsupportedNode, "root() is only valid as a G-function letter");
    case K::G: {
      std::vector<GLetter> letters;
      for (std::size_t i = 0; i + 1 < a->kids.size(); ++i) {
        const AstPtr& l = a->kids[i];
        if (l->k == K::Root) {
          RationalFunc p = canonicalize_rational(to_expr(l->kids[0]));
          if (!p.den().is_constant()) throw Error(ErrorKind::InvalidArgument, "root() needs a polynomial");
          letters.push_back(RootSum{p.num()});
        } else {
          RationalFunc c = canonicalize_rational(to_expr(l));
          if (!c.is_constant()) throw Error(ErrorKind::InvalidArgument, "G-function letters must be constants");
          letters.push_back(c.constant_value());
        }
      }
      Expr arg = to_expr(a->kids.back());
      Symbol s = symbol_of_G(letters, canonicalize_rational(arg));
      return {s, static_cast<int>(letters.size()), !arg.depends_on_x()};
    }
  }
  return {};
}

bool looks_like_prefix(std::string_view text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string_view::npos) return false;
  std::size_t j = text.find_first_of(" \t\r\n", i);
  std::string_view first = text.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
  static const char* words[] = {"add", "mul", "pow", "div", "polylog", "ln", "+", "-", "ox"};
  for (const char* w : words)
    if (first == w) return true;
  return first == "x" && j == std::string_view::npos;
}

}  // namespace

Expr parse_infix(std::string_view text) { return to_expr(Parser(text).parse_all()); }

Graded parse_infix_graded(std::string_view text) { return to_graded(Parser(text).parse_all()); }

RawSymbol parse_symbol_text(std::string_view text) {
  Parser p(text);
  RawSymbol s;
  if (p.peek().kind == Tk::Num && p.peek().text == "0" && p.peek(1).kind == Tk::End) return s;
  bool first = true;
  while (p.peek().kind != Tk::End) {
    Rational sign = 1;
    if (p.is_op("+") || p.is_op("-")) {
      sign = p.next().text == "-" ? -1 : 1;
    } else if (!first) {
      p.fail("expected '+' or '-' between symbol terms");
    }
    first = false;
    Rational coeff = 1;
    // coefficient forms: n*, n/m*, (n/m)*
    if (p.peek().kind == Tk::Num && p.is_op("*", 1)) {
      coeff = Rational(Integer(p.next().text));
      p.next();
    } else if (p.peek().kind == Tk::Num && p.is_op("/", 1) && p.peek(2).kind == Tk::Num && p.is_op("*", 3)) {
      Integer a(p.next().text);
      p.next();
      Integer b(p.next().text);
      p.next();
      coeff = Rational(a, b);
    } else if (p.is_op("(") && p.peek(1).kind == Tk::Num && p.is_op("/", 2) && p.peek(3).kind == Tk::Num &&
               p.is_op(")", 4) && p.is_op("*", 5)) {
      p.next();
      Integer a(p.next().text);
      p.next();
      Integer b(p.next().text);
      p.next();
      p.next();
      coeff = Rational(a, b);
    }
    if (coeff.get_den() == 0) throw Error(ErrorKind::ZeroDenominator, "zero denominator in coefficient");
    coeff.canonicalize();
    RawTerm t{sign * coeff, {}};
    t.entries.push_back(canonicalize_rational(to_expr(p.product())));
    while (p.is_ident("ox")) {
      p.next();
      t.entries.push_back(canonicalize_rational(to_expr(p.product())));
    }
    s.terms.push_back(std::move(t));
  }
  return s;
}

Expr parse_expression(std::string_view text) {
  if (looks_like_prefix(text)) {
    try {
      return parse_prefix(tokenize(text));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownToken) throw;
    }
  }
  return parse_infix(text);
}

Graded parse_graded(std::string_view text) {
  if (looks_like_prefix(text)) {
    try {
      return graded_of(parse_prefix(tokenize(text)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownToken) throw;
    }
  }
  return parse_infix_graded(text);
}

RawSymbol parse_symbol(std::string_view text) {
  if (looks_like_prefix(text)) {
    try {
      return parse_symbol_prefix(tokenize(text));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownToken) throw;
    }
  }
  return parse_symbol_text(text);
}

}  // namespace polylog
