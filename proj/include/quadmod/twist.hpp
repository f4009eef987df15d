#pragma once

// Multiplier sequences of twist deformations inside H and their limits on B2.
//
// A plan fixes log-multipliers (w1, w2) with Re w_j < 0. The n-th state has
//   1/w_{1,n} = 1/w1 + i n / (2 pi),   1/w_{2,n} = 1/w2 - i n / (2 pi),
// attracting multipliers exp(w_{j,n}) and the repelling multiplier given by
// the fixed point relation. As n grows the class tends to f_{1, lambda} with
// 1/(1 - lambda) = 1/w1 + 1/w2.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "quadmod/complex.hpp"
#include "quadmod/error.hpp"
#include "quadmod/moduli.hpp"

namespace quadmod {

struct TwistPlan {
  Complex omega1;
  Complex omega2;
  Complex limit_lambda;
};

/// The reciprocals 1/w_{j,n} carry the recursion. They grow like n/(2 pi), so
/// they are kept in extended precision; the +/- shifts then cancel in their
/// sum to far below double rounding of the individual terms.
struct TwistState {
  std::size_t n = 0;
  std::complex<long double> inv_omega1n;
  std::complex<long double> inv_omega2n;
  Complex omega1n;
  Complex omega2n;
  EigenvalueTriple triple;
};

inline Complex twist_limit(Complex omega1, Complex omega2) {
  return 1.0 - omega1 * omega2 / (omega1 + omega2);
}

inline TwistPlan make_twist_plan(Complex omega1, Complex omega2) {
  if (!(omega1.real() < 0.0) || !(omega2.real() < 0.0)) {
    throw Error(ErrorKind::InvalidForm, "log-multipliers need negative real part");
  }
  return {omega1, omega2, twist_limit(omega1, omega2)};
}

/// w_j = Log(lambda_j) + 2 pi i k_j.
inline TwistPlan plan_from_multipliers(Complex lambda1, Complex lambda2, std::int64_t k1 = 0, std::int64_t k2 = 0) {
  if (lambda1 == Complex{} || lambda2 == Complex{}) {
    throw Error(ErrorKind::ZeroMultiplier, "a multiplier is zero and has no logarithm");
  }
  if (!(std::abs(lambda1) < 1.0) || !(std::abs(lambda2) < 1.0)) {
    throw Error(ErrorKind::InvalidForm, "multipliers must lie in the open unit disk");
  }
  const Complex w1 = std::log(lambda1) + Complex(0.0, 2.0 * kPi * static_cast<double>(k1));
  const Complex w2 = std::log(lambda2) + Complex(0.0, 2.0 * kPi * static_cast<double>(k2));
  return make_twist_plan(w1, w2);
}

inline TwistState twist_state(const TwistPlan& plan, std::size_t n) {
  using Wide = std::complex<long double>;
  const long double shift = static_cast<long double>(n) / (2.0L * std::numbers::pi_v<long double>);
  const Wide base1 = 1.0L / Wide(plan.omega1);
  const Wide base2 = 1.0L / Wide(plan.omega2);

  TwistState s;
  s.n = n;
  s.inv_omega1n = base1 + Wide(0.0L, shift);
  s.inv_omega2n = base2 - Wide(0.0L, shift);
  const Wide w1 = 1.0L / s.inv_omega1n;
  const Wide w2 = 1.0L / s.inv_omega2n;
  s.omega1n = Complex(static_cast<double>(w1.real()), static_cast<double>(w1.imag()));
  s.omega2n = Complex(static_cast<double>(w2.real()), static_cast<double>(w2.imag()));
  // 1 - exp(w) via expm1: the attracting multipliers approach 1 like 2 pi / n.
  const Complex d1 = -expm1(s.omega1n);
  const Complex d2 = -expm1(s.omega2n);
  s.triple = {std::exp(s.omega1n), std::exp(s.omega2n), lambda3_from_offsets(d1, d2)};
  return s;
}

/// |(1/w_{1,n} + 1/w_{2,n}) - (1/w1 + 1/w2)|.
inline double twist_sum_residual(const TwistPlan& plan, const TwistState& state) {
  using Wide = std::complex<long double>;
  const Wide base = 1.0L / Wide(plan.omega1) + 1.0L / Wide(plan.omega2);
  return static_cast<double>(std::abs(state.inv_omega1n + state.inv_omega2n - base));
}

/// Distance in (sigma1, sigma2) from the n-th state to the limit class (1, 1, lambda).
inline double twist_limit_error(const TwistPlan& plan, std::size_t n) {
  const ModuliPoint at_n = sigma_coordinates(twist_state(plan, n).triple);
  const ModuliPoint limit = sigma_coordinates({1.0, 1.0, plan.limit_lambda});
  return moduli_distance(at_n, limit);
}

/// A twist plan converging to f_{1, lambda}: the symmetric choice w1 = w2 = 2(1 - lambda).
inline TwistPlan inverse_twist(Complex lambda) {
  if (!(lambda.real() > 1.0)) {
    throw Error(ErrorKind::NotInB2, "Re lambda must exceed 1");
  }
  const Complex w = 2.0 * (1.0 - lambda);
  return make_twist_plan(w, w);
}

/// 1, 2, 4, ... up to n_max, with n_max appended when it is not a power of two.
inline std::vector<std::size_t> geometric_grid(std::size_t n_max) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 1; n <= n_max && n != 0; n *= 2) grid.push_back(n);
  if (n_max > 0 && grid.back() != n_max) grid.push_back(n_max);
  return grid;
}

}  // namespace quadmod
