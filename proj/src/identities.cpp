#include "polylog/identities.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <unordered_map>

#include "polylog/error.hpp"
#include "polylog/numeric.hpp"

namespace polylog {

DilogSum DilogSum::from_terms(const std::vector<DilogTerm>& terms) {
  DilogSum s;
  std::unordered_map<RationalFunc, std::size_t, RationalFuncHash> pos;
  for (const auto& t : terms) {
    auto [it, inserted] = pos.emplace(t.arg, s.terms_.size());
    if (inserted)
      s.terms_.push_back(t);
    else
      s.terms_[it->second].coeff += t.coeff;
  }
  std::erase_if(s.terms_, [](const DilogTerm& t) { return t.coeff == 0; });
  return s;
}

namespace {

std::optional<DilogTerm> as_dilog_term(const Expr& e) {
  using K = Expr::Kind;
  if (e.kind() == K::Li) {
    if (e.weight() != 2) throw Error(ErrorKind::UnsupportedNode, "only Li2 terms are allowed in a dilogarithm sum");
    return DilogTerm{1, canonicalize_rational(e.arg())};
  }
  if (e.kind() == K::Mul) {
    Rational c = 1;
    std::optional<DilogTerm> li;
    bool logs = false;
    for (const auto& f : e.children()) {
      if (f.is_constant()) {
        c *= f.value();
      } else if (f.kind() == K::Li && !li) {
        li = as_dilog_term(f);
      } else if (f.kind() == K::Ln || (f.kind() == K::Pow && f.base().kind() == K::Ln && f.exponent() > 0)) {
        logs = true;
      } else {
        throw Error(ErrorKind::UnsupportedNode, "unsupported factor in dilogarithm sum: " + f.str());
      }
    }
    if (logs) return std::nullopt;
    if (!li) return std::nullopt;
    li->coeff *= c;
    return li;
  }
  if (e.is_constant() || e.kind() == K::Ln || (e.kind() == K::Pow && e.base().kind() == K::Ln)) return std::nullopt;
  throw Error(ErrorKind::UnsupportedNode, "unsupported term in dilogarithm sum: " + e.str());
}

}  // namespace

DilogSum DilogSum::from_expr(const Expr& e) {
  std::vector<DilogTerm> terms;
  if (e.kind() == Expr::Kind::Add) {
    for (const auto& c : e.children())
      if (auto t = as_dilog_term(c)) terms.push_back(*t);
  } else if (auto t = as_dilog_term(e)) {
    terms.push_back(*t);
  }
  return from_terms(terms);
}

Expr DilogSum::to_expr() const {
  if (terms_.empty()) return Expr::integer(0);
  std::vector<Expr> parts;
  parts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Expr li = Expr::li(2, Expr::from_rational_func(t.arg));
    parts.push_back(t.coeff == 1 ? li : Expr::mul({Expr::rational(t.coeff), li}));
  }
  return Expr::add(std::move(parts));
}

std::string DilogSum::key() const {
  std::vector<const DilogTerm*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const DilogTerm* a, const DilogTerm* b) { return a->arg < b->arg; });
  std::string k;
  for (const auto* t : sorted) {
    k += t->coeff.get_str();
    k += '[';
    for (const auto& c : t->arg.num().coeffs()) k += c.get_str() + ',';
    k += '/';
    for (const auto& c : t->arg.den().coeffs()) k += c.get_str() + ',';
    k += ']';
  }
  return k;
}

std::string_view identity_name(Identity k) {
  switch (k) {
    case Identity::Reflection: return "reflection";
    case Identity::Inversion: return "inversion";
    case Identity::Duplication: return "duplication";
  }
  return "?";
}

Identity identity_from_name(std::string_view name) {
  for (Identity k : kIdentities)
    if (identity_name(k) == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown identity '" + std::string(name) + "'");
}

std::vector<DilogTerm> rewrite_term(const DilogTerm& t, Identity k) {
  switch (k) {
    case Identity::Reflection: return {{-t.coeff, t.arg.one_minus()}};
    case Identity::Inversion: return {{-t.coeff, t.arg.reciprocal()}};
    case Identity::Duplication: return {{-t.coeff, -t.arg}, {t.coeff / 2, t.arg.square()}};
  }
  return {};
}

DilogSum apply_identity_at(const DilogSum& s, std::size_t index, Identity k) {
  if (s.empty()) throw Error(ErrorKind::EmptyExpression, "no term to rewrite");
  if (index >= s.size()) throw Error(ErrorKind::InvalidArgument, "term index out of range");
  std::vector<DilogTerm> terms;
  terms.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == index) {
      for (auto& r : rewrite_term(s.terms()[i], k)) terms.push_back(std::move(r));
    } else {
      terms.push_back(s.terms()[i]);
    }
  }
  return DilogSum::from_terms(terms);
}

DilogSum apply_identity(const DilogSum& s, Identity k) { return apply_identity_at(s, 0, k); }

DilogSum cyclic_permute(const DilogSum& s) {
  if (s.size() <= 1) return s;
  std::vector<DilogTerm> terms(s.terms().begin() + 1, s.terms().end());
  terms.push_back(s.terms().front());
  return DilogSum::from_terms(terms);
}

std::complex<double> full_identity_residual(Identity k, std::complex<double> x) {
  using C = std::complex<double>;
  auto li2 = [](C z) { return polylog_value(2, z); };
  auto ln = [](C z) { return log_value(z); };
  const double z2 = std::numbers::pi * std::numbers::pi / 6;
  switch (k) {
    case Identity::Reflection: return li2(x) - (-li2(1.0 - x) + z2 - ln(x) * ln(1.0 - x));
    case Identity::Inversion: {
      C l = ln(-x);
      return li2(x) - (-li2(1.0 / x) - z2 - l * l / 2.0);
    }
    case Identity::Duplication: return li2(x) - (-li2(-x) + li2(x * x) / 2.0);
  }
  return 0;
}

std::complex<double> five_term_residual(std::complex<double> x, std::complex<double> y) {
  using C = std::complex<double>;
  auto li2 = [](C z) { return polylog_value(2, z); };
  auto ln = [](C z) { return log_value(z); };
  C u = (1.0 - x) / (1.0 - x * y), v = (1.0 - y) / (1.0 - x * y);
  C lhs = li2(x) + li2(y) + li2(u) + li2(1.0 - x * y) + li2(v);
  C rhs = std::numbers::pi * std::numbers::pi / 2 - ln(x) * ln(1.0 - x) - ln(y) * ln(1.0 - y) - ln(u) * ln(v);
  return lhs - rhs;
}

DilogSum scramble(const DilogSum& s, const std::vector<ScrambleStep>& schedule, std::size_t max_tokens) {
  // last[i] is the identity that produced term i, if any
  std::vector<DilogTerm> terms = s.terms();
  std::vector<std::optional<Identity>> last(terms.size());
  for (const auto& step : schedule) {
    if (terms.empty()) throw Error(ErrorKind::EmptyExpression, "no term to rewrite");
    if (step.term >= terms.size()) throw Error(ErrorKind::InvalidArgument, "term index out of range");
    if (last[step.term] == step.identity)
      throw Error(ErrorKind::RepeatedIdentityOnTerm,
                  std::string(identity_name(step.identity)) + " applied twice in a row on term " + std::to_string(step.term));
    std::vector<DilogTerm> next;
    std::vector<std::optional<Identity>> next_last;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i == step.term) {
        for (auto& r : rewrite_term(terms[i], step.identity)) {
          next.push_back(std::move(r));
          next_last.push_back(step.identity);
        }
      } else {
        next.push_back(terms[i]);
        next_last.push_back(last[i]);
      }
    }
    // merge, keeping the earliest position
    std::vector<DilogTerm> merged;
    std::vector<std::optional<Identity>> merged_last;
    std::unordered_map<RationalFunc, std::size_t, RationalFuncHash> pos;
    for (std::size_t i = 0; i < next.size(); ++i) {
      auto [it, inserted] = pos.emplace(next[i].arg, merged.size());
      if (inserted) {
        merged.push_back(next[i]);
        merged_last.push_back(next_last[i]);
      } else {
        merged[it->second].coeff += next[i].coeff;
        if (next_last[i]) merged_last[it->second] = next_last[i];
      }
    }
    terms.clear();
    last.clear();
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (merged[i].coeff == 0) continue;
      terms.push_back(merged[i]);
      last.push_back(merged_last[i]);
    }
  }
  DilogSum out = DilogSum::from_terms(terms);
  if (out.tokens().size() > max_tokens)
    throw Error(ErrorKind::TokenBudgetExceeded, "scrambled expression exceeds " + std::to_string(max_tokens) + " tokens");
  return out;
}

}  // namespace polylog
