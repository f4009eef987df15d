#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace quadmod {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// e^w - 1 without cancellation for small |w|.
inline Complex expm1(Complex w) {
  const double x = w.real();
  const double y = w.imag();
  const double em1 = std::expm1(x);
  const double half_sin = std::sin(0.5 * y);
  const double re = em1 * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = (em1 + 1.0) * std::sin(y);
  return {re, im};
}

// Lexicographic (Re, Im) order; used wherever a canonical root order is needed.
inline bool lex_less(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace quadmod
