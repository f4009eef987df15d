#pragma once

// Fixed points and multipliers of quadratic rational maps, and the
// symmetric-function coordinates (sigma1, sigma2) on their moduli space.
//
// Everything is double precision. Multipliers are always obtained by
// differentiating the map in a local chart (w = 1/z near infinity); closed
// forms for the "other two" multipliers are never used to produce values.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "quadmod/complex.hpp"
#include "quadmod/error.hpp"
#include "quadmod/map_form.hpp"
#include "quadmod/sphere.hpp"

namespace quadmod {

struct EigenvalueTriple {
  Complex lambda1;
  Complex lambda2;
  Complex lambda3;

  std::array<Complex, 3> values() const { return {lambda1, lambda2, lambda3}; }
};

struct ModuliPoint {
  Complex sigma1;
  Complex sigma2;

  /// sigma3 is forced by the fixed point relation.
  Complex sigma3() const { return sigma1 - 2.0; }
};

struct FixedPoint {
  SpherePoint point;
  Complex multiplier;
  int multiplicity = 1;
};

/// Third multiplier from 1 - l1 and 1 - l2. Exact algebra:
/// l3 = (d1 + d2) / (d1 + d2 - d1 d2), which is 1 - 1/s for
/// s = 1 - 1/d1 - 1/d2.
inline Complex lambda3_from_offsets(Complex one_minus_l1, Complex one_minus_l2) {
  const Complex d1 = one_minus_l1;
  const Complex d2 = one_minus_l2;
  const Complex den = d1 + d2 - d1 * d2;  // = 1 - l1 l2
  if (std::abs(den) <= kDegenerateTol) {
    throw Error(ErrorKind::InvalidForm, "lambda1 * lambda2 = 1 has no finite third multiplier");
  }
  return (d1 + d2) / den;
}

/// The multiplier of the third fixed point, given the other two, from
/// 1/(1-l1) + 1/(1-l2) + 1/(1-l3) = 1.
inline Complex lambda3_from_eq1(Complex lambda1, Complex lambda2) {
  if (near_one(lambda1) || near_one(lambda2)) {
    throw Error(ErrorKind::DegenerateFixedPoints,
                "a multiplier equals 1; use the z + B + 1/z form");
  }
  return lambda3_from_offsets(1.0 - lambda1, 1.0 - lambda2);
}

/// Relative residual of 1/(1-l1) + 1/(1-l2) + 1/(1-l3) = 1.
inline double fixed_point_relation_residual(const EigenvalueTriple& t) {
  const Complex a = 1.0 / (1.0 - t.lambda1);
  const Complex b = 1.0 / (1.0 - t.lambda2);
  const Complex c = 1.0 / (1.0 - t.lambda3);
  return std::abs(a + b + c - 1.0) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
}

/// |sigma3 - (sigma1 - 2)| relative to the size of the terms.
inline double sigma_identity_residual(const EigenvalueTriple& t) {
  const Complex s1 = t.lambda1 + t.lambda2 + t.lambda3;
  const Complex s3 = t.lambda1 * t.lambda2 * t.lambda3;
  return std::abs(s3 - (s1 - 2.0)) / (1.0 + std::abs(s1) + std::abs(s3));
}

inline ModuliPoint sigma_coordinates(const EigenvalueTriple& t) {
  const Complex s1 = t.lambda1 + t.lambda2 + t.lambda3;
  const Complex s2 = t.lambda1 * t.lambda2 + t.lambda1 * t.lambda3 + t.lambda2 * t.lambda3;
  const Complex s3 = t.lambda1 * t.lambda2 * t.lambda3;
  if (std::abs(s3 - (s1 - 2.0)) > 1e-6 * (1.0 + std::abs(s1))) {
    throw Error(ErrorKind::InconsistentTriple, "sigma3 != sigma1 - 2");
  }
  return {s1, s2};
}

namespace detail {

inline Complex cubic_value(Complex s1, Complex s2, Complex x) {
  return ((x - s1) * x + s2) * x - (s1 - 2.0);
}

inline Complex cubic_slope(Complex s1, Complex s2, Complex x) {
  return (3.0 * x - 2.0 * s1) * x + s2;
}

}  // namespace detail

/// Roots of l^3 - s1 l^2 + s2 l - (s1 - 2), by Cardano's formula followed by
/// one Newton step per root. Sorted lexicographically by (Re, Im).
inline EigenvalueTriple eigenvalues_from_sigma(const ModuliPoint& m) {
  const Complex s1 = m.sigma1;
  const Complex s2 = m.sigma2;
  // x^3 + a x^2 + b x + c, shifted to t^3 + p t + q with x = t - a/3.
  const Complex a = -s1;
  const Complex b = s2;
  const Complex c = -(s1 - 2.0);
  const Complex p = b - a * a / 3.0;
  const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Complex big = -q / 2.0 + disc;
  const Complex alt = -q / 2.0 - disc;
  if (std::abs(alt) > std::abs(big)) big = alt;

  std::array<Complex, 3> roots{};
  const Complex shift = -a / 3.0;
  if (big == Complex{}) {
    roots.fill(shift);
  } else {
    const Complex cbrt = std::pow(big, 1.0 / 3.0);
    const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
    Complex rot = 1.0;
    for (auto& r : roots) {
      const Complex cr = cbrt * rot;
      r = cr - p / (3.0 * cr) + shift;
      rot *= omega;
    }
  }

  for (auto& r : roots) {
    const Complex fx = detail::cubic_value(s1, s2, r);
    const Complex dfx = detail::cubic_slope(s1, s2, r);
    if (fx == Complex{} || dfx == Complex{}) continue;
    const Complex polished = r - fx / dfx;
    if (is_finite(polished) && std::abs(detail::cubic_value(s1, s2, polished)) <= std::abs(fx)) {
      r = polished;
    }
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return {roots[0], roots[1], roots[2]};
}

/// Fixed points with multipliers and multiplicities (which sum to 3).
inline std::vector<FixedPoint> fixed_points_and_multipliers(const MapForm& form) {
  const QuadraticMap map = to_quadratic(form);
  auto with_multiplier = [&map](SpherePoint p, int mult) {
    return FixedPoint{p, map.multiplier(p), mult};
  };

  if (const auto* f = form.get_if<LambdaForm>()) {
    const SpherePoint zero = SpherePoint::origin();
    const SpherePoint inf = SpherePoint::infinity();
    if (near_one(f->lambda2)) {
      // The third fixed point (1 - l1)/(1 - l2) has merged with infinity.
      return {with_multiplier(zero, 1), with_multiplier(inf, 2)};
    }
    if (near_one(f->lambda1)) {
      return {with_multiplier(zero, 2), with_multiplier(inf, 1)};
    }
    const SpherePoint z3(1.0 - f->lambda1, 1.0 - f->lambda2);
    return {with_multiplier(zero, 1), with_multiplier(inf, 1), with_multiplier(z3, 1)};
  }

  if (const auto* f = form.get_if<PerOneForm>()) {
    const SpherePoint inf = SpherePoint::infinity();
    if (f->b == Complex{}) return {with_multiplier(inf, 3)};
    return {with_multiplier(inf, 2), with_multiplier(SpherePoint(-1.0, f->b), 1)};
  }

  const auto& c = std::get<ConjugatedForm>(form.variant());
  std::vector<FixedPoint> out;
  for (const FixedPoint& base : fixed_points_and_multipliers(*c.base)) {
    out.push_back(with_multiplier(c.mobius(base.point), base.multiplicity));
  }
  return out;
}

/// The multipliers of `form` listed with multiplicity.
inline EigenvalueTriple eigenvalue_triple(const MapForm& form) {
  std::vector<Complex> values;
  for (const FixedPoint& fp : fixed_points_and_multipliers(form)) {
    for (int k = 0; k < fp.multiplicity; ++k) values.push_back(fp.multiplier);
  }
  return {values.at(0), values.at(1), values.at(2)};
}

/// z + B + 1/z conjugate to f_{1, lambda}: B is the principal root of 1 - lambda.
/// B and -B give conjugate maps (via z -> -z).
/// B = sqrt(1 - lambda) on the principal branch. A zero imaginary part is
/// taken as +0 so real lambda > 1 gives B = +i sqrt(lambda - 1).
inline Complex per1_parameter(Complex lambda) {
  Complex w = 1.0 - lambda;
  if (w.imag() == 0.0) w.imag(0.0);
  return std::sqrt(w);
}

inline MapForm per1_form_from_lambda(Complex lambda) {
  return MapForm::per_one(per1_parameter(lambda));
}

inline double moduli_distance(const ModuliPoint& a, const ModuliPoint& b) {
  return std::max(std::abs(a.sigma1 - b.sigma1), std::abs(a.sigma2 - b.sigma2));
}

}  // namespace quadmod
