#include "polylog/expr.hpp"

#include <sstream>

#include "polylog/error.hpp"

namespace polylog {

struct Expr::Node {
  Kind kind = Kind::Int;
  Rational value;
  std::vector<Expr> children;
  long exponent = 0;
  int weight = 0;
  bool has_x = false;
};

namespace {

std::shared_ptr<Expr::Node> make(Expr::Kind k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Expr::Expr() : Expr(integer(0)) {}

Expr Expr::integer(const Integer& v) {
  auto n = make(Kind::Int);
  n->value = v;
  return Expr(n);
}

Expr Expr::rational(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  if (c.get_den() == 1) return integer(c.get_num());
  auto n = make(Kind::Rat);
  n->value = c;
  return Expr(n);
}

Expr Expr::var() {
  auto n = make(Kind::Var);
  n->has_x = true;
  return Expr(n);
}

Expr Expr::add(std::vector<Expr> children) {
  std::vector<Expr> flat;
  Rational sum = 0;
  int const_pos = -1;
  for (auto& c : children) {
    std::vector<Expr> parts;
    if (c.kind() == Kind::Add)
      parts = c.children();
    else
      parts.push_back(c);
    for (auto& p : parts) {
      if (p.is_constant()) {
        sum += p.value();
        if (const_pos < 0) {
          const_pos = static_cast<int>(flat.size());
          flat.push_back(p);
        }
      } else {
        flat.push_back(p);
      }
    }
  }
  if (const_pos >= 0) {
    if (sum == 0)
      flat.erase(flat.begin() + const_pos);
    else
      flat[const_pos] = rational(sum);
  }
  if (flat.empty()) return integer(0);
  if (flat.size() == 1) return flat[0];
  auto n = make(Kind::Add);
  for (auto& c : flat) n->has_x = n->has_x || c.depends_on_x();
  n->children = std::move(flat);
  return Expr(n);
}

Expr Expr::mul(std::vector<Expr> children) {
  std::vector<Expr> flat;
  Rational prod = 1;
  int const_pos = -1;
  for (auto& c : children) {
    std::vector<Expr> parts;
    if (c.kind() == Kind::Mul)
      parts = c.children();
    else
      parts.push_back(c);
    for (auto& p : parts) {
      if (p.is_constant()) {
        prod *= p.value();
        if (const_pos < 0) {
          const_pos = static_cast<int>(flat.size());
          flat.push_back(p);
        }
      } else {
        flat.push_back(p);
      }
    }
  }
  if (prod == 0) return integer(0);
  if (const_pos >= 0) {
    if (prod == 1)
      flat.erase(flat.begin() + const_pos);
    else
      flat[const_pos] = rational(prod);
  }
  if (flat.empty()) return integer(1);
  if (flat.size() == 1) return flat[0];
  auto n = make(Kind::Mul);
  for (auto& c : flat) n->has_x = n->has_x || c.depends_on_x();
  n->children = std::move(flat);
  return Expr(n);
}

Expr Expr::pow(const Expr& base, long exponent) {
  if (exponent == 1) return base;
  if (exponent == 0) return integer(1);
  if (base.is_constant()) {
    Rational v = base.value();
    if (v == 0) {
      if (exponent < 0) throw Error(ErrorKind::ZeroDenominator, "zero to a negative power");
      return integer(0);
    }
    unsigned long k = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), k);
    Rational r = exponent < 0 ? Rational(den, num) : Rational(num, den);
    return rational(r);
  }
  auto n = make(Kind::Pow);
  n->children = {base};
  n->exponent = exponent;
  n->has_x = base.depends_on_x();
  return Expr(n);
}

Expr Expr::ln(const Expr& arg) {
  auto n = make(Kind::Ln);
  n->children = {arg};
  n->has_x = arg.depends_on_x();
  return Expr(n);
}

Expr Expr::li(int weight, const Expr& arg) {
  if (weight < 2 || weight > 4) throw Error(ErrorKind::UnsupportedWeight, "polylog weight " + std::to_string(weight));
  auto n = make(Kind::Li);
  n->children = {arg};
  n->weight = weight;
  n->has_x = arg.depends_on_x();
  return Expr(n);
}

Expr Expr::from_poly(const Poly& p) {
  if (p.is_zero()) return integer(0);
  std::vector<Expr> terms;
  for (int i = 0; i <= p.degree(); ++i) {
    const Integer& c = p.coeffs()[i];
    if (c == 0) continue;
    if (i == 0) {
      terms.push_back(integer(c));
      continue;
    }
    Expr mono = i == 1 ? var() : pow(var(), i);
    terms.push_back(c == 1 ? mono : mul({integer(c), mono}));
  }
  return add(std::move(terms));
}

Expr Expr::from_rational_func(const RationalFunc& f) {
  Expr num = from_poly(f.num());
  if (f.den().is_one()) return num;
  Expr den = pow(from_poly(f.den()), -1);
  return mul({num, den});
}

Expr::Kind Expr::kind() const { return node_->kind; }
Rational Expr::value() const { return node_->value; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Expr& Expr::base() const { return node_->children[0]; }
long Expr::exponent() const { return node_->exponent; }
const Expr& Expr::arg() const { return node_->children[0]; }
int Expr::weight() const { return node_->weight; }
bool Expr::depends_on_x() const { return node_->has_x; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Int:
    case Expr::Kind::Rat: return x.value == y.value;
    case Expr::Kind::Var: return true;
    case Expr::Kind::Pow:
      if (x.exponent != y.exponent) return false;
      break;
    case Expr::Kind::Li:
      if (x.weight != y.weight) return false;
      break;
    default: break;
  }
  return x.children == y.children;
}

namespace {

bool negative_leading(const Expr& e) {
  if (e.is_constant()) return e.value() < 0;
  if (e.kind() == Expr::Kind::Mul) return negative_leading(e.children()[0]);
  return false;
}

void render(const Expr& e, std::ostream& os, int prec);

// Magnitude of a product or constant; prec as in render.
void render_abs(const Expr& e, std::ostream& os, int prec) {
  if (e.is_constant()) {
    Rational v = abs(e.value());
    if (v.get_den() != 1 && prec >= 2) os << "(" << v << ")";
    else os << v;
    return;
  }
  bool inverse = e.kind() == Expr::Kind::Pow && e.exponent() < 0;
  if (e.kind() != Expr::Kind::Mul && !inverse) {
    render(e, os, prec);
    return;
  }
  std::vector<Expr> factors = inverse ? std::vector<Expr>{e} : e.children();
  std::vector<std::string> num, den;
  Rational c = 1;
  for (const auto& f : factors) {
    std::ostringstream part;
    if (f.is_constant()) {
      c = abs(f.value());
    } else if (f.kind() == Expr::Kind::Pow && f.exponent() < 0) {
      render(f.exponent() == -1 ? f.base() : Expr::pow(f.base(), -f.exponent()), part, 3);
      den.push_back(part.str());
    } else {
      render(f, part, 2);
      num.push_back(part.str());
    }
  }
  bool wrap = prec >= 3 || (prec >= 2 && !den.empty());
  if (wrap) os << "(";
  std::string sep;
  if (c.get_num() != 1 || num.empty()) {
    os << c.get_num();
    sep = "*";
  }
  for (auto& n : num) {
    os << sep << n;
    sep = "*";
  }
  if (c.get_den() != 1) den.insert(den.begin(), c.get_den().get_str());
  if (!den.empty()) {
    os << "/";
    if (den.size() > 1) os << "(";
    for (std::size_t i = 0; i < den.size(); ++i) os << (i ? "*" : "") << den[i];
    if (den.size() > 1) os << ")";
  }
  if (wrap) os << ")";
}

// prec: 0 top, 1 sum operand, 2 product factor, 3 power base
void render(const Expr& e, std::ostream& os, int prec) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Int:
    case K::Rat:
    case K::Mul: {
      bool neg = negative_leading(e);
      bool wrap = neg && prec >= 2;
      if (wrap) os << "(";
      if (neg) os << "-";
      render_abs(e, os, neg ? std::max(prec, 2) : prec);
      if (wrap) os << ")";
      return;
    }
    case K::Var: os << "x"; return;
    case K::Add: {
      if (prec >= 2) os << "(";
      bool first = true;
      for (const auto& c : e.children()) {
        bool neg = negative_leading(c);
        if (first) {
          if (neg) os << "-";
        } else {
          os << (neg ? " - " : " + ");
        }
        render_abs(c, os, 1);
        first = false;
      }
      if (prec >= 2) os << ")";
      return;
    }
    case K::Pow:
      if (e.exponent() < 0) {
        render_abs(e, os, prec);
        return;
      }
      render(e.base(), os, 3);
      os << "^" << e.exponent();
      return;
    case K::Ln:
      os << "ln(";
      render(e.arg(), os, 0);
      os << ")";
      return;
    case K::Li:
      os << "Li" << e.weight() << "(";
      render(e.arg(), os, 0);
      os << ")";
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  render(*this, os, 0);
  return os.str();
}

RationalFunc canonicalize_rational(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Int:
    case K::Rat: return RationalFunc::constant(e.value());
    case K::Var: return RationalFunc::x();
    case K::Add: {
      RationalFunc r;
      for (const auto& c : e.children()) r = r + canonicalize_rational(c);
      return r;
    }
    case K::Mul: {
      RationalFunc r = RationalFunc::constant(1);
      for (const auto& c : e.children()) r = r * canonicalize_rational(c);
      return r;
    }
    case K::Pow: {
      RationalFunc b = canonicalize_rational(e.base());
      if (e.exponent() < 0 && b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
      return b.pow(static_cast<int>(e.exponent()));
    }
    case K::Ln:
    case K::Li: throw Error(ErrorKind::NotRational, "transcendental node in rational context");
  }
  return RationalFunc();
}

}  // namespace polylog
