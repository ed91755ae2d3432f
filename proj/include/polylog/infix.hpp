#pragma once

#include <string_view>

#include "polylog/symbol.hpp"

namespace polylog {

// Infix grammar: + - * / ^, unary minus, integers, x, Li2/Li3/Li4(e), Li(n, e), polylog(n, e), ln/log(e).
Expr parse_infix(std::string_view text);

// Symbol-level reading of a function that may also use G(a1, ..., an; arg) with rational letters or
// root(P) letters (sum over the roots of P), and the weighted constants pi and zeta3 / zeta(n).
Graded parse_infix_graded(std::string_view text);

// Symbol text: terms "[-] [c*] e1 ox e2 ...", with c an integer, p/q or (p/q); "⊗" is accepted for "ox".
RawSymbol parse_symbol_text(std::string_view text);

// Prefix tokens when the text starts with a prefix token word, infix otherwise.
Expr parse_expression(std::string_view text);
Graded parse_graded(std::string_view text);
RawSymbol parse_symbol(std::string_view text);

}  // namespace polylog
