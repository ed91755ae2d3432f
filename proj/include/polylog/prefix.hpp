#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polylog/expr.hpp"

namespace polylog {

// The first 20 tokens form the expression vocabulary; Ox extends it for symbols.
enum class Token : std::uint8_t {
  Add, Mul, Pow, Div, Polylog, Ln, Plus, Minus, X, Ten,
  D0, D1, D2, D3, D4, D5, D6, D7, D8, D9,
  Ox,
};

inline constexpr int kVocabSize = 20;
inline constexpr std::size_t kMaxExprTokens = 512;
inline constexpr std::size_t kMaxSymbolTokens = 1024;

using TokenSeq = std::vector<Token>;

std::string_view token_text(Token t);
Token token_from_text(std::string_view s);  // throws UnknownToken
TokenSeq tokenize(std::string_view text);    // whitespace separated
std::string join(const TokenSeq& tokens);

TokenSeq to_prefix(const Expr& e);
void append_prefix(TokenSeq& out, const Expr& e);
void append_integer(TokenSeq& out, const Integer& v);
Expr parse_prefix(const TokenSeq& tokens);

// Sequential reader shared by the expression and symbol grammars.
class PrefixReader {
 public:
  explicit PrefixReader(const TokenSeq& tokens) : t_(tokens) {}
  bool at_end() const { return pos_ >= t_.size(); }
  Token peek() const;
  Token next();
  std::size_t position() const { return pos_; }
  Integer integer();
  Expr expr();
  void expect_end() const;

 private:
  const TokenSeq& t_;
  std::size_t pos_ = 0;
};

// Parent/child pairs over token positions; numeral digits hang off their sign token.
std::vector<std::pair<int, int>> prefix_edges(const TokenSeq& tokens);

}  // namespace polylog
