#pragma once

#include <utility>
#include <vector>

#include "polylog/poly.hpp"

namespace polylog {

struct Factorization {
  Integer unit;  // signed content, p = unit * prod(f^e)
  std::vector<std::pair<Poly, int>> factors;  // irreducible, primitive, positive lead, sorted
};

// Complete factorization over the integers. Throws InvalidArgument on the zero polynomial.
Factorization factor(const Poly& p);

// Square-free decomposition of a primitive polynomial: p = prod(s_i^i).
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

}  // namespace polylog
