#include <doctest.h>

#include "printers.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "polylog/factor.hpp"
#include "polylog/rational_func.hpp"

using namespace polylog;

namespace {

Poly parse_coeffs(const std::string& s) {
  std::istringstream is(s);
  std::vector<Integer> c;
  std::string tok;
  while (is >> tok) c.emplace_back(tok);
  return Poly(c);
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
  Poly a{1, 1};   // 1+x
  Poly b{-1, 1};  // x-1
  CHECK(a * b == Poly{-1, 0, 1});
  CHECK(gcd(Poly{-1, 0, 1}, Poly{-2, 2}) == b);
  CHECK(Poly{2, 4}.primitive() == Poly{1, 2});
  CHECK(Poly{-2, -4}.primitive() == Poly{1, 2});
  Poly q;
  CHECK(divides(b, Poly{-1, 0, 1}, &q));
  CHECK(q == a);
  CHECK_FALSE(divides(Poly{1, 2}, Poly{1, 1}));
  CHECK(pow(a, 3) == Poly{1, 3, 3, 1});
  CHECK(Poly{1, 2, 3}.compose(Poly{0, 2}) == Poly{1, 4, 12});
}

TEST_CASE("factorization matches frozen reference table") {
  std::ifstream in(POLYLOG_TEST_DATA "/factor_cases.txt");
  REQUIRE(in.good());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    auto p1 = line.find('|');
    auto p2 = line.find('|', p1 + 1);
    Poly p = parse_coeffs(line.substr(0, p1));
    Integer unit(line.substr(p1 + 1, p2 - p1 - 1).c_str() + 1);
    std::map<Poly, int> expected;
    std::istringstream fs(line.substr(p2 + 1));
    std::string part;
    while (std::getline(fs, part, ';')) {
      auto caret = part.find('^');
      expected[parse_coeffs(part.substr(0, caret))] += std::stoi(part.substr(caret + 1));
    }
    Factorization f = factor(p);
    std::map<Poly, int> got(f.factors.begin(), f.factors.end());
    INFO(line);
    CHECK(f.unit == unit);
    CHECK(got == expected);
    ++n;
  }
  CHECK(n > 100);
}

TEST_CASE("factorization reconstructs random products") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4), dg(1, 5), cnt(1, 4), ex(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = Poly::constant(1);
    int k = cnt(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<Integer> c(dg(rng) + 1);
      for (auto& v : c) v = coef(rng);
      if (c.back() == 0) c.back() = 1;
      p = p * pow(Poly(c), ex(rng));
    }
    if (p.is_zero()) continue;
    Factorization f = factor(p);
    Poly back = Poly::constant(f.unit);
    for (auto& [g, e] : f.factors) {
      CHECK(g == g.primitive());
      CHECK(g.degree() >= 1);
      back = back * pow(g, e);
    }
    CHECK(back == p);
  }
}

TEST_CASE("rational function canonical form") {
  RationalFunc f(Poly{-1, 0, 1}, Poly{-1, 1});
  CHECK(f == RationalFunc(Poly{1, 1}));
  RationalFunc g(Poly{2, 2}, Poly{2, 1});
  CHECK(g.num() == Poly{2, 2});
  CHECK(g.den() == Poly{2, 1});
  CHECK(RationalFunc(Poly{0, 1}, Poly{0, 1}) == RationalFunc::constant(1));
  CHECK(RationalFunc(Poly{1}, Poly{-2}) == RationalFunc::constant(Rational(-1, 2)));
  RationalFunc h(Poly{1, 3}, Poly{2, 0, 5});
  CHECK(h.one_minus() == RationalFunc::constant(1) - h);
  CHECK(h.reciprocal() == RationalFunc::constant(1) / h);
  CHECK(h.square() == h * h);
  CHECK(h.reciprocal().reciprocal() == h);
  CHECK(h.compose(RationalFunc::x()) == h);
}
