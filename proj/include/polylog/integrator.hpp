#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polylog/symbol.hpp"

namespace polylog {

struct IntegrationOptions {
  bool allow_substitution = true;
  bool feeding = true;
  // Tried in order after the default pair z=(1-y)/(1+y), z=(1+y)/(1-y).
  std::vector<RationalFunc> extra_substitutions;
};

struct IntegrationResult {
  Expr function;  // sum of c*Li2(g) and c*ln(f)*ln(g)
  Symbol residual;
  std::vector<std::string> trace;
  std::optional<RationalFunc> substitution;   // z as a function of the original variable
  std::optional<Expr> function_substituted;   // the same function written in z
};

struct SymmetricSplit {
  Expr logs;
  Symbol remainder;
};

// Weight 2 only. Removes the whole symmetric part as log products; the remainder is antisymmetric.
SymmetricSplit integrate_symmetric(const Symbol& s);

// k * f (x) g with f = a + b y^n, g = c + d y^n (either may be a bare monomial y^m).
// Returns -k Li2(h) with the same symbol. Throws DegenerateDeterminant when ad - bc = 0.
Expr integrate_uniform_power(const Rational& k, const Poly& f, const Poly& g);

// Entry merges into uniform powers and cyclotomic feeding by (1 +- y).
RawSymbol combine_terms(const RawSymbol& s);

// Rewrites s in the variable z = sub(y). Throws NonInvertibleSubstitution unless sub is Moebius.
Symbol substitute_variable(const Symbol& s, const RationalFunc& sub);

IntegrationResult integrate_weight2(const Symbol& s, const IntegrationOptions& opts = {});

// a + b x^n with a, b != 0 and n >= 1; returns n, or 0 otherwise.
int binomial_power(const Poly& p);

}  // namespace polylog
