#include "polylog/prefix.hpp"

#include <array>
#include <cctype>
#include <sstream>

#include "polylog/error.hpp"

namespace polylog {
namespace {

constexpr std::array<std::string_view, 21> kText = {
    "add", "mul", "pow", "div", "polylog", "ln", "+", "-", "x", "10",
    "0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "ox"};

bool is_digit(Token t) { return t >= Token::D0 && t <= Token::D9; }

}  // namespace

std::string_view token_text(Token t) { return kText[static_cast<int>(t)]; }

Token token_from_text(std::string_view s) {
  for (std::size_t i = 0; i < kText.size(); ++i)
    if (kText[i] == s) return static_cast<Token>(i);
  if (s == "−") return Token::Minus;
  throw Error(ErrorKind::UnknownToken, std::string(s));
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(token_from_text(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string join(const TokenSeq& tokens) {
  std::string s;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) s += ' ';
    s += token_text(tokens[i]);
  }
  return s;
}

void append_integer(TokenSeq& out, const Integer& v) {
  out.push_back(v < 0 ? Token::Minus : Token::Plus);
  std::string digits = Integer(abs(v)).get_str();
  for (char c : digits) out.push_back(static_cast<Token>(static_cast<int>(Token::D0) + (c - '0')));
}

void append_prefix(TokenSeq& out, const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Int: append_integer(out, e.value().get_num()); return;
    case K::Rat:
      out.push_back(Token::Div);
      append_integer(out, e.value().get_num());
      append_integer(out, e.value().get_den());
      return;
    case K::Var: out.push_back(Token::X); return;
    case K::Add: {
      const auto& c = e.children();
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        out.push_back(Token::Add);
        append_prefix(out, c[i]);
      }
      append_prefix(out, c.back());
      return;
    }
    case K::Mul: {
      const auto& c = e.children();
      const Expr& last = c.back();
      if (last.kind() == K::Pow && last.exponent() == -1) {
        out.push_back(Token::Div);
        std::vector<Expr> rest(c.begin(), c.end() - 1);
        if (rest.size() == 1) {
          append_prefix(out, rest[0]);
        } else {
          for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
            out.push_back(Token::Mul);
            append_prefix(out, rest[i]);
          }
          append_prefix(out, rest.back());
        }
        append_prefix(out, last.base());
        return;
      }
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        out.push_back(Token::Mul);
        append_prefix(out, c[i]);
      }
      append_prefix(out, c.back());
      return;
    }
    case K::Pow:
      if (e.exponent() == -1) {
        out.push_back(Token::Div);
        append_integer(out, 1);
        append_prefix(out, e.base());
        return;
      }
      out.push_back(Token::Pow);
      append_prefix(out, e.base());
      append_integer(out, e.exponent());
      return;
    case K::Ln:
      out.push_back(Token::Ln);
      append_prefix(out, e.arg());
      return;
    case K::Li:
      out.push_back(Token::Polylog);
      append_integer(out, e.weight());
      append_prefix(out, e.arg());
      return;
  }
}

TokenSeq to_prefix(const Expr& e) {
  TokenSeq out;
  append_prefix(out, e);
  return out;
}

Token PrefixReader::peek() const {
  if (at_end()) throw Error(ErrorKind::MalformedPrefix, "unexpected end of tokens");
  return t_[pos_];
}

Token PrefixReader::next() {
  Token t = peek();
  ++pos_;
  return t;
}

Integer PrefixReader::integer() {
  Token sign = next();
  if (sign != Token::Plus && sign != Token::Minus)
    throw Error(ErrorKind::MalformedPrefix, "expected sign token at position " + std::to_string(pos_ - 1));
  std::size_t start = pos_;
  while (!at_end() && (is_digit(t_[pos_]) || t_[pos_] == Token::Ten)) ++pos_;
  if (pos_ == start) throw Error(ErrorKind::MalformedPrefix, "numeral without digits");
  bool tens = false;
  for (std::size_t i = start; i < pos_; ++i) tens = tens || t_[i] == Token::Ten;
  Integer v = 0;
  if (!tens) {
    for (std::size_t i = start; i < pos_; ++i) v = v * 10 + (static_cast<int>(t_[i]) - static_cast<int>(Token::D0));
  } else {
    // digit d followed by k "10" tokens contributes d * 10^k
    std::size_t i = pos_;
    int k = 0;
    while (i-- > start) {
      if (t_[i] == Token::Ten) {
        ++k;
        continue;
      }
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
      v += p * (static_cast<int>(t_[i]) - static_cast<int>(Token::D0));
    }
  }
  return sign == Token::Minus ? Integer(-v) : v;
}

Expr PrefixReader::expr() {
  Token t = peek();
  switch (t) {
    case Token::Plus:
    case Token::Minus: return Expr::integer(integer());
    case Token::X: next(); return Expr::var();
    case Token::Add: {
      next();
      Expr a = expr();
      Expr b = expr();
      return Expr::add({a, b});
    }
    case Token::Mul: {
      next();
      Expr a = expr();
      Expr b = expr();
      return Expr::mul({a, b});
    }
    case Token::Div: {
      next();
      Expr a = expr();
      Expr b = expr();
      return Expr::mul({a, Expr::pow(b, -1)});
    }
    case Token::Pow: {
      next();
      Expr b = expr();
      Integer k = integer();
      if (!k.fits_slong_p()) throw Error(ErrorKind::MalformedPrefix, "exponent too large");
      return Expr::pow(b, k.get_si());
    }
    case Token::Ln: next(); return Expr::ln(expr());
    case Token::Polylog: {
      next();
      Integer w = integer();
      if (!w.fits_sint_p()) throw Error(ErrorKind::UnsupportedWeight, "polylog weight");
      return Expr::li(static_cast<int>(w.get_si()), expr());
    }
    default:
      throw Error(ErrorKind::MalformedPrefix,
                  "unexpected token '" + std::string(token_text(t)) + "' at position " + std::to_string(pos_));
  }
}

void PrefixReader::expect_end() const {
  if (!at_end()) throw Error(ErrorKind::MalformedPrefix, "trailing tokens at position " + std::to_string(pos_));
}

Expr parse_prefix(const TokenSeq& tokens) {
  if (tokens.empty()) throw Error(ErrorKind::MalformedPrefix, "empty token sequence");
  PrefixReader r(tokens);
  Expr e = r.expr();
  r.expect_end();
  return e;
}

namespace {

int walk(const TokenSeq& t, std::size_t& pos, std::vector<std::pair<int, int>>& edges) {
  if (pos >= t.size()) throw Error(ErrorKind::MalformedPrefix, "unexpected end of tokens");
  int self = static_cast<int>(pos);
  Token tok = t[pos++];
  auto child = [&] { edges.emplace_back(self, walk(t, pos, edges)); };
  switch (tok) {
    case Token::Plus:
    case Token::Minus:
      while (pos < t.size() && (is_digit(t[pos]) || t[pos] == Token::Ten)) edges.emplace_back(self, static_cast<int>(pos++));
      break;
    case Token::Add:
    case Token::Mul:
    case Token::Div:
    case Token::Pow:
    case Token::Polylog:
    case Token::Ox:
      child();
      child();
      break;
    case Token::Ln: child(); break;
    case Token::X: break;
    default: throw Error(ErrorKind::MalformedPrefix, "unexpected token in tree walk");
  }
  return self;
}

}  // namespace

std::vector<std::pair<int, int>> prefix_edges(const TokenSeq& tokens) {
  std::vector<std::pair<int, int>> edges;
  std::size_t pos = 0;
  while (pos < tokens.size()) walk(tokens, pos, edges);
  return edges;
}

}  // namespace polylog
