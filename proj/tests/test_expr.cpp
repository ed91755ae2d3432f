#include <doctest.h>

#include "printers.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "polylog/error.hpp"
#include "polylog/numeric.hpp"
#include "polylog/prefix.hpp"

using namespace polylog;

namespace {

const std::string kFig2 = "add mul + 2 polylog + 2 x polylog + 2 add + 1 mul - 1 x";

Expr one_minus_x() { return Expr::add({Expr::integer(1), Expr::mul({Expr::integer(-1), Expr::var()})}); }

// Adaptive Simpson on a real integrand.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 1e-14, 50);
}

}  // namespace

TEST_CASE("token list parses to 2 Li2(x) + Li2(1-x)") {
  Expr e = parse_prefix(tokenize(kFig2));
  Expr expected = Expr::add({Expr::mul({Expr::integer(2), Expr::li(2, Expr::var())}), Expr::li(2, one_minus_x())});
  CHECK(e == expected);
  CHECK(join(to_prefix(e)) == kFig2);
  CHECK(e.str() == "2*Li2(x) + Li2(1 - x)");
}

TEST_CASE("prefix serialization basics") {
  CHECK(join(to_prefix(Expr::li(2, Expr::var()))) == "polylog + 2 x");
  CHECK(join(to_prefix(Expr::integer(12))) == "+ 1 2");
  CHECK(join(to_prefix(Expr::integer(-305))) == "- 3 0 5");
  CHECK(join(to_prefix(Expr::rational(Rational(5, 2)))) == "div + 5 + 2");
  CHECK(parse_prefix(tokenize("x")) == Expr::var());
  CHECK(parse_prefix(tokenize("+ 1 10 2")) == Expr::integer(12));
  CHECK(parse_prefix(tokenize("- 1 10 2 10 3")) == Expr::integer(-123));
  CHECK(parse_prefix(tokenize("− 4")) == Expr::integer(-4));
  CHECK_THROWS_AS(parse_prefix(tokenize("add x")), Error);
  CHECK_THROWS_AS(parse_prefix(tokenize("x x")), Error);
  CHECK_THROWS_AS(tokenize("sin x"), Error);
  try {
    tokenize("sin");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownToken);
  }
  try {
    parse_prefix(tokenize("mul + 2"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedPrefix);
  }
}

TEST_CASE("rational function expressions round trip") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-3, 3), d(0, 3);
  for (int i = 0; i < 300; ++i) {
    auto rp = [&] {
      std::vector<Integer> v(d(rng) + 1);
      for (auto& a : v) a = c(rng);
      return Poly(v);
    };
    Poly n = rp(), m = rp();
    if (m.is_zero()) continue;
    RationalFunc f(n, m);
    Expr e = Expr::from_rational_func(f);
    TokenSeq t = to_prefix(e);
    Expr back = parse_prefix(t);
    CHECK(back == e);
    CHECK(to_prefix(back) == t);
    CHECK(canonicalize_rational(back) == f);
  }
}

TEST_CASE("canonicalize_rational") {
  Expr x = Expr::var();
  Expr num = Expr::add({Expr::pow(x, 2), Expr::integer(-1)});
  Expr den = Expr::add({x, Expr::integer(-1)});
  CHECK(canonicalize_rational(Expr::mul({num, Expr::pow(den, -1)})) == RationalFunc(Poly{1, 1}));
  Expr f = parse_prefix(tokenize("div add + 2 mul + 2 x add + 2 x"));
  RationalFunc rf = canonicalize_rational(f);
  CHECK(rf.num() == Poly{2, 2});
  CHECK(rf.den() == Poly{2, 1});
  CHECK(canonicalize_rational(Expr::mul({x, Expr::pow(x, -1)})) == RationalFunc::constant(1));
  CHECK_THROWS_AS(canonicalize_rational(Expr::ln(x)), Error);
  CHECK_THROWS_AS(canonicalize_rational(parse_prefix(tokenize("div x add x mul - 1 x"))), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  Expr g = parse_prefix(tokenize("div add pow x + 3 + 1 mul add x + 1 add x - 2"));
  Expr cg = Expr::from_rational_func(canonicalize_rational(g));
  CHECK(canonicalize_rational(cg) == canonicalize_rational(g));
  for (int i = 0; i < 20; ++i) {
    std::complex<double> z(u(rng), u(rng));
    CHECK(std::abs(eval_numeric(g, z) - eval_numeric(cg, z)) < 1e-12 * std::max(1.0, std::abs(eval_numeric(g, z))));
  }
}

TEST_CASE("polylog numerics") {
  using C = std::complex<double>;
  CHECK(std::abs(polylog_value(2, C(0))) == 0);
  CHECK(std::abs(polylog_value(2, C(1)) - std::numbers::pi * std::numbers::pi / 6) < 1e-15);
  double quad = integrate([](double t) { return t == 0 ? 1.0 : -std::log1p(-t) / t; }, 0, 0.5);
  CHECK(std::abs(polylog_value(2, C(0.5)) - quad) < 1e-13);
  // Li3(1/2) known closed form
  double l2 = std::log(2.0), pi = std::numbers::pi;
  double li3half = 7.0 / 8 * 1.2020569031595942 - pi * pi / 12 * l2 + l2 * l2 * l2 / 6;
  CHECK(std::abs(polylog_value(3, C(0.5)) - li3half) < 1e-14);
  // region boundaries agree with the series on both sides
  for (double r : {0.49, 0.51, 1.9, 2.1}) {
    for (int n = 2; n <= 4; ++n) {
      C z = std::polar(r, 2.0);
      C a = polylog_value(n, z);
      auto b = polylog_value<long double>(n, std::complex<long double>(z.real(), z.imag()));
      CHECK(std::abs(a - C(b.real(), b.imag())) < 1e-13);
    }
  }
  // Li2 derivative check: d/dz Li2(z) = -ln(1-z)/z
  for (double r : {0.3, 0.8, 1.5, 3.0}) {
    C z = std::polar(r, 1.1), h(1e-6, 0);
    C d = (polylog_value(2, z + h) - polylog_value(2, z - h)) / (2.0 * h);
    CHECK(std::abs(d + std::log(1.0 - z) / z) < 1e-8);
    C d3 = (polylog_value(3, z + h) - polylog_value(3, z - h)) / (2.0 * h);
    CHECK(std::abs(d3 - polylog_value(2, z) / z) < 1e-8);
    C d4 = (polylog_value(4, z + h) - polylog_value(4, z - h)) / (2.0 * h);
    CHECK(std::abs(d4 - polylog_value(3, z) / z) < 1e-8);
  }
  CHECK_THROWS_AS(polylog_value(2, C(3.0)), Error);
  CHECK_THROWS_AS(log_value(C(-1.0)), Error);
  CHECK_THROWS_AS(eval_numeric(Expr::li(2, Expr::var()), C(0.2), 200), Error);
  CHECK(std::abs(eval_numeric(Expr::li(2, Expr::var()), C(0.2), 64) - polylog_value(2, C(0.2))) < 1e-15);
}

TEST_CASE("reflection identity holds numerically") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  Expr x = Expr::var();
  Expr lhs = Expr::add({Expr::li(2, x), Expr::li(2, one_minus_x()), Expr::mul({Expr::ln(x), Expr::ln(one_minus_x())})});
  for (int i = 0; i < 100; ++i) {
    double x0 = u(rng);
    CHECK(std::abs(eval_numeric(lhs, {x0, 0}) - std::numbers::pi * std::numbers::pi / 6) < 1e-10);
  }
}
