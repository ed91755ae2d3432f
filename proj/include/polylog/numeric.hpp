#pragma once

#include <complex>

#include "polylog/expr.hpp"

namespace polylog {

// Principal-branch Li_n(z) for n in 1..4. Throws BranchCutAmbiguous on the real ray (1, inf).
template <class Real>
std::complex<Real> polylog_value(int n, std::complex<Real> z);

// Principal logarithm; throws BranchCutAmbiguous on (-inf, 0) and PoleEncountered at 0.
template <class Real>
std::complex<Real> log_value(std::complex<Real> z);

template <class Real>
std::complex<Real> evaluate(const Expr& e, std::complex<Real> x0);

// Uses double up to 53 bits and long double up to 64; more throws InvalidArgument.
std::complex<double> eval_numeric(const Expr& e, std::complex<double> x0, int precision_bits = 53);

extern template std::complex<double> polylog_value<double>(int, std::complex<double>);
extern template std::complex<long double> polylog_value<long double>(int, std::complex<long double>);
extern template std::complex<double> log_value<double>(std::complex<double>);
extern template std::complex<long double> log_value<long double>(std::complex<long double>);
extern template std::complex<double> evaluate<double>(const Expr&, std::complex<double>);
extern template std::complex<long double> evaluate<long double>(const Expr&, std::complex<long double>);

}  // namespace polylog
