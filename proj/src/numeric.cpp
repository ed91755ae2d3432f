#include "polylog/numeric.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "polylog/error.hpp"

namespace polylog {
namespace {

template <class Real>
Real eps() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real pi() {
  return std::numbers::pi_v<Real>;
}

template <class Real>
Real zeta(int n) {
  switch (n) {
    case 2: return pi<Real>() * pi<Real>() / 6;
    case 3: return static_cast<Real>(1.2020569031595942853997381615114499907649862923405L);
    case 4: return std::pow(pi<Real>(), 4) / 90;
  }
  Real s = 0;
  for (int k = 1; k < 100000; ++k) {
    Real t = std::pow(static_cast<Real>(k), -n);
    s += t;
    if (t < eps<Real>() * s) break;
  }
  return s;
}

// c_j = zeta(1-2j) / (n-1+2j)!, via the functional equation.
template <class Real>
const std::array<std::array<Real, 80>, 5>& log_series_coeffs() {
  static const auto table = [] {
    std::array<std::array<Real, 80>, 5> t{};
    Real two_pi = 2 * pi<Real>();
    for (int n = 1; n <= 4; ++n) {
      for (int j = 1; j < 80; ++j) {
        Real z2j = zeta<Real>(2 * j);
        Real denom = std::pow(two_pi, static_cast<Real>(2 * j));
        for (int i = 0; i < n; ++i) denom *= static_cast<Real>(2 * j + i);
        t[n][j] = ((j % 2) ? -2 : 2) * z2j / denom;
      }
    }
    return t;
  }();
  return table;
}

template <class Real>
std::complex<Real> series_small(int n, std::complex<Real> z) {
  std::complex<Real> sum = 0, zk = z;
  for (int k = 1; k < 10000; ++k) {
    std::complex<Real> term = zk / std::pow(static_cast<Real>(k), static_cast<Real>(n));
    sum += term;
    if (std::abs(term) <= eps<Real>() * std::abs(sum) / 4) break;
    zk *= z;
  }
  return sum;
}

template <class Real>
std::complex<Real> series_log(int n, std::complex<Real> z) {
  using C = std::complex<Real>;
  C mu = std::log(z);
  C sum = 0;
  C mk = 1;
  Real fact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      mk *= mu;
      fact *= k;
    }
    if (k == n - 1) {
      Real h = 0;
      for (int i = 1; i <= n - 1; ++i) h += static_cast<Real>(1) / i;
      sum += mk / fact * (h - std::log(-mu));
    } else if (k == n) {
      sum += static_cast<Real>(-0.5) * mk / fact;
    } else {
      sum += zeta<Real>(n - k) * mk / fact;
    }
  }
  const auto& c = log_series_coeffs<Real>()[n];
  C mu2 = mu * mu;
  C p = std::pow(mu, n + 1);
  for (int j = 1; j < 80; ++j) {
    C term = c[j] * p;
    sum += term;
    if (std::abs(term) <= eps<Real>() * std::abs(sum) / 4) break;
    p *= mu2;
  }
  return sum;
}

template <class Real>
std::complex<Real> li_core(int n, std::complex<Real> z) {
  using C = std::complex<Real>;
  if (z == C(0)) return 0;
  if (z == C(1)) return n == 1 ? C(std::numeric_limits<Real>::infinity()) : C(zeta<Real>(n));
  Real r = std::abs(z);
  if (n == 1) return -std::log(C(1) - z);
  if (r <= static_cast<Real>(0.5)) return series_small(n, z);
  if (r < 2) return series_log(n, z);
  C l = std::log(-z);
  Real p2 = pi<Real>() * pi<Real>();
  C inv = li_core(n, C(1) / z);
  switch (n) {
    case 2: return -inv - p2 / 6 - l * l / static_cast<Real>(2);
    case 3: return inv - p2 / 6 * l - l * l * l / static_cast<Real>(6);
    case 4: return -inv - 7 * p2 * p2 / 360 - p2 / 12 * l * l - l * l * l * l / static_cast<Real>(24);
  }
  throw Error(ErrorKind::UnsupportedWeight, "polylog weight " + std::to_string(n));
}

template <class Real>
Real cut_tolerance(std::complex<Real> z) {
  return std::sqrt(eps<Real>()) * std::max<Real>(1, std::abs(z)) * static_cast<Real>(1e-4);
}

}  // namespace

template <class Real>
std::complex<Real> polylog_value(int n, std::complex<Real> z) {
  if (n < 1 || n > 4) throw Error(ErrorKind::UnsupportedWeight, "polylog weight " + std::to_string(n));
  if (std::abs(z.imag()) <= cut_tolerance(z) && z.real() > 1 + cut_tolerance(z))
    throw Error(ErrorKind::BranchCutAmbiguous, "polylog argument on the cut (1, inf)");
  if (std::abs(z.imag()) <= cut_tolerance(z) && z.real() > 1) z = 1;
  if (n == 1 && z == std::complex<Real>(1)) throw Error(ErrorKind::PoleEncountered, "Li1 at 1");
  return li_core(n, z);
}

template <class Real>
std::complex<Real> log_value(std::complex<Real> z) {
  if (std::abs(z) == 0) throw Error(ErrorKind::PoleEncountered, "log of zero");
  if (std::abs(z.imag()) <= cut_tolerance(z) && z.real() < 0)
    throw Error(ErrorKind::BranchCutAmbiguous, "log argument on the cut (-inf, 0)");
  return std::log(std::complex<Real>(z.real(), std::abs(z.imag()) <= cut_tolerance(z) ? 0 : z.imag()));
}

template <class Real>
std::complex<Real> evaluate(const Expr& e, std::complex<Real> x0) {
  using K = Expr::Kind;
  using C = std::complex<Real>;
  switch (e.kind()) {
    case K::Int:
    case K::Rat: return C(static_cast<Real>(e.value().get_d()));
    case K::Var: return x0;
    case K::Add: {
      C s = 0;
      for (const auto& c : e.children()) s += evaluate(c, x0);
      return s;
    }
    case K::Mul: {
      C s = 1;
      for (const auto& c : e.children()) s *= evaluate(c, x0);
      return s;
    }
    case K::Pow: {
      C b = evaluate(e.base(), x0);
      if (e.exponent() < 0 && std::abs(b) <= std::numeric_limits<Real>::min() * 1e6)
        throw Error(ErrorKind::PoleEncountered, "division by zero at evaluation point");
      C r = 1;
      long k = std::abs(e.exponent());
      for (long i = 0; i < k; ++i) r *= b;
      return e.exponent() < 0 ? C(1) / r : r;
    }
    case K::Ln: return log_value(evaluate(e.arg(), x0));
    case K::Li: return polylog_value(e.weight(), evaluate(e.arg(), x0));
  }
  return 0;
}

std::complex<double> eval_numeric(const Expr& e, std::complex<double> x0, int precision_bits) {
  if (precision_bits <= 53) return evaluate<double>(e, x0);
  if (precision_bits <= std::numeric_limits<long double>::digits) {
    auto r = evaluate<long double>(e, std::complex<long double>(x0.real(), x0.imag()));
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
  }
  throw Error(ErrorKind::InvalidArgument, "precision above " + std::to_string(std::numeric_limits<long double>::digits) + " bits");
}

template std::complex<double> polylog_value<double>(int, std::complex<double>);
template std::complex<long double> polylog_value<long double>(int, std::complex<long double>);
template std::complex<double> log_value<double>(std::complex<double>);
template std::complex<long double> log_value<long double>(std::complex<long double>);
template std::complex<double> evaluate<double>(const Expr&, std::complex<double>);
template std::complex<long double> evaluate<long double>(const Expr&, std::complex<long double>);

}  // namespace polylog
