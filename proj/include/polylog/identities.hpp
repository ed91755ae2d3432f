#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polylog/prefix.hpp"

namespace polylog {

struct DilogTerm {
  Rational coeff;
  RationalFunc arg;
  friend bool operator==(const DilogTerm& a, const DilogTerm& b) { return a.coeff == b.coeff && a.arg == b.arg; }
};

// Sum of c_i Li2(h_i(x)) with distinct canonical arguments; the first term is the action target.
class DilogSum {
 public:
  DilogSum() = default;
  // Merges like terms at their earliest position and drops zero coefficients.
  static DilogSum from_terms(const std::vector<DilogTerm>& terms);
  // Accepts a sum of rational multiples of Li2(rational); x-free constants and ln products are dropped.
  static DilogSum from_expr(const Expr& e);

  const std::vector<DilogTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Expr to_expr() const;
  TokenSeq tokens() const { return to_prefix(to_expr()); }
  // Order-insensitive canonical key used for deduplication.
  std::string key() const;
  std::string str() const { return to_expr().str(); }

  friend bool operator==(const DilogSum& a, const DilogSum& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<DilogTerm> terms_;
};

enum class Identity : std::uint8_t { Reflection = 0, Inversion = 1, Duplication = 2 };

inline constexpr Identity kIdentities[] = {Identity::Reflection, Identity::Inversion, Identity::Duplication};

std::string_view identity_name(Identity k);
Identity identity_from_name(std::string_view name);  // throws InvalidArgument

// Replacement terms for c Li2(h) under the identity (logs and constants dropped).
std::vector<DilogTerm> rewrite_term(const DilogTerm& t, Identity k);
DilogSum apply_identity_at(const DilogSum& s, std::size_t index, Identity k);
DilogSum apply_identity(const DilogSum& s, Identity k);  // first term
DilogSum cyclic_permute(const DilogSum& s);

std::complex<double> full_identity_residual(Identity k, std::complex<double> x0);
std::complex<double> five_term_residual(std::complex<double> x, std::complex<double> y);

struct ScrambleStep {
  std::size_t term;
  Identity identity;
};

// Applies the schedule while tracking, per term, the identity that produced it.
// Throws RepeatedIdentityOnTerm and TokenBudgetExceeded.
DilogSum scramble(const DilogSum& s, const std::vector<ScrambleStep>& schedule,
                  std::size_t max_tokens = kMaxExprTokens);

}  // namespace polylog
