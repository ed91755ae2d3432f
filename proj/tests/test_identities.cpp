#include <doctest.h>

#include "printers.hpp"

#include <random>

#include "polylog/error.hpp"
#include "polylog/identities.hpp"
#include "polylog/infix.hpp"
#include "polylog/symbol.hpp"

using namespace polylog;

namespace {

DilogSum sum_of(const char* text) { return DilogSum::from_expr(parse_infix(text)); }

RationalFunc random_arg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-2, 2), d(0, 2);
  for (;;) {
    auto rp = [&] {
      std::vector<Integer> v(d(rng) + 1);
      for (auto& a : v) a = c(rng);
      return Poly(v);
    };
    Poly n = rp(), m = rp();
    if (m.is_zero()) continue;
    RationalFunc f(n, m);
    if (!f.is_constant()) return f;
  }
}

Symbol anti(const DilogSum& s) { return antisymmetric_part(symbol_of(s.to_expr())); }

}  // namespace

TEST_CASE("action table on 2 Li2(x) + Li2(1-x)") {
  DilogSum s = sum_of("2*Li2(x) + Li2(1-x)");
  REQUIRE(s.size() == 2);
  CHECK(apply_identity(s, Identity::Reflection) == sum_of("-Li2(1-x)"));
  CHECK(apply_identity(s, Identity::Duplication) == sum_of("-2*Li2(-x) + Li2(x^2) + Li2(1-x)"));
  CHECK(apply_identity(s, Identity::Inversion) == sum_of("-2*Li2(1/x) + Li2(1-x)"));
  DilogSum c = cyclic_permute(s);
  CHECK(c == sum_of("Li2(1-x) + 2*Li2(x)"));
  CHECK(cyclic_permute(c) == s);
  CHECK(cyclic_permute(sum_of("Li2(x)")) == sum_of("Li2(x)"));
  DilogSum li = sum_of("Li2(x)");
  CHECK(apply_identity(apply_identity(li, Identity::Inversion), Identity::Inversion) == li);
  CHECK_THROWS_AS(apply_identity(DilogSum(), Identity::Reflection), Error);
}

TEST_CASE("dilog sums merge like terms at their earliest position") {
  DilogSum s = DilogSum::from_terms({{2, RationalFunc::x()}, {1, RationalFunc::x().one_minus()}, {-2, RationalFunc::x()}});
  REQUIRE(s.size() == 1);
  CHECK(s.terms()[0].arg == RationalFunc::x().one_minus());
  DilogSum t = DilogSum::from_terms({{1, RationalFunc::x()}, {3, RationalFunc::x().square()}, {1, RationalFunc::x()}});
  CHECK(t.terms()[0].coeff == 2);
  CHECK(t.terms()[1].coeff == 3);
  CHECK(DilogSum::from_expr(parse_infix("Li2(x) - Li2(x)")).empty());
  CHECK(DilogSum::from_expr(parse_infix("Li2(x) + ln(x)*ln(1-x) + 3")) == sum_of("Li2(x)"));
  CHECK(t.key() == DilogSum::from_terms({{3, RationalFunc::x().square()}, {2, RationalFunc::x()}}).key());
}

TEST_CASE("five-term and two-term identities numerically") {
  CHECK(std::abs(full_identity_residual(Identity::Reflection, 0.3)) < 1e-10);
  CHECK(std::abs(full_identity_residual(Identity::Inversion, -0.5)) < 1e-10);
  CHECK(std::abs(full_identity_residual(Identity::Duplication, 0.7)) < 1e-10);
  CHECK(std::abs(full_identity_residual(Identity::Duplication, -0.7)) < 1e-10);
  CHECK(std::abs(five_term_residual(0.3, 0.4)) < 1e-10);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u01(0.001, 0.999), um(-0.999, -0.001);
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(full_identity_residual(Identity::Reflection, u01(rng))) < 1e-10);
    CHECK(std::abs(full_identity_residual(Identity::Inversion, um(rng))) < 1e-10);
    CHECK(std::abs(five_term_residual(u01(rng), u01(rng))) < 1e-10);
  }
  CHECK_THROWS_AS(full_identity_residual(Identity::Inversion, 2.0), Error);
}

TEST_CASE("reflection and inversion generate a group of order 6 on arguments") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    RationalFunc h = random_arg(rng);
    if (h.one_minus().is_zero()) continue;
    CHECK(h.one_minus().one_minus() == h);
    CHECK(h.reciprocal().reciprocal() == h);
    RationalFunc g = h;
    for (int k = 0; k < 3; ++k) g = g.one_minus().reciprocal();
    CHECK(g == h);
  }
  // orbit of x has six elements
  std::vector<RationalFunc> orbit{RationalFunc::x()};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (RationalFunc n : {orbit[i].one_minus(), orbit[i].reciprocal()})
      if (std::find(orbit.begin(), orbit.end(), n) == orbit.end()) orbit.push_back(n);
  }
  CHECK(orbit.size() == 6);
}

TEST_CASE("identities preserve the antisymmetric symbol") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    RationalFunc f = random_arg(rng);
    DilogSum s = DilogSum::from_terms({{1, f}});
    Symbol a = symbol_of(s.to_expr());
    CHECK(a == symbol_of(apply_identity(s, Identity::Duplication).to_expr()));
    for (Identity k : kIdentities) CHECK(anti(s) == anti(apply_identity(s, k)));
  }
}

TEST_CASE("scramble") {
  RationalFunc h = RationalFunc(Poly{1, 1}, Poly{0, 1});
  DilogSum zero = DilogSum::from_terms({{3, h}, {-3, h}});
  CHECK(zero.empty());
  // injected zero kept as separate slots: c Li2(h) - c Li2(h) with the first scrambled
  DilogSum pair = DilogSum::from_terms({{3, h}, {-3, RationalFunc::x()}});
  DilogSum r = scramble(pair, {{0, Identity::Reflection}});
  CHECK(r == DilogSum::from_terms({{-3, h.one_minus()}, {-3, RationalFunc::x()}}));
  CHECK(scramble(pair, {}) == pair);
  CHECK_THROWS_AS(scramble(pair, {{0, Identity::Reflection}, {0, Identity::Reflection}}), Error);
  try {
    scramble(pair, {{0, Identity::Inversion}, {0, Identity::Inversion}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RepeatedIdentityOnTerm);
  }
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 500) {
    DilogSum s = DilogSum::from_terms({{std::uniform_int_distribution<int>(1, 8)(rng), random_arg(rng)}});
    std::vector<ScrambleStep> steps;
    int n = std::uniform_int_distribution<int>(1, 5)(rng);
    DilogSum cur = s;
    std::optional<Identity> prev;
    for (int k = 0; k < n; ++k) {
      Identity id = kIdentities[std::uniform_int_distribution<int>(0, 2)(rng)];
      if (prev == id) continue;
      steps.push_back({0, id});
      prev = id;
    }
    DilogSum out;
    try {
      out = scramble(s, steps);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TokenBudgetExceeded);
      continue;
    }
    CHECK(anti(out) == anti(s));
    ++done;
  }
}
