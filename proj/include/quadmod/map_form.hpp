#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <variant>

#include "quadmod/complex.hpp"
#include "quadmod/error.hpp"
#include "quadmod/sphere.hpp"

namespace quadmod {

// Below this, 1 - l1*l2 (or 1 - l) is treated as an exact degeneracy.
inline constexpr double kDegenerateTol = 1e-12;

inline bool near_one(Complex z) noexcept { return std::abs(z - 1.0) <= kDegenerateTol; }

/// (l1 z + z^2) / (l2 z + 1): fixed points 0 and infinity with multipliers
/// l1 and l2.
struct LambdaForm {
  Complex lambda1;
  Complex lambda2;
};

/// z + B + 1/z: infinity is parabolic with multiplier 1.
struct PerOneForm {
  Complex b;
};

class MapForm;

/// mobius o base o mobius^-1.
struct ConjugatedForm {
  std::shared_ptr<const MapForm> base;
  MobiusMap mobius;
};

class MapForm {
 public:
  using Variant = std::variant<LambdaForm, PerOneForm, ConjugatedForm>;

  static MapForm lambda(Complex lambda1, Complex lambda2) {
    if (!is_finite(lambda1) || !is_finite(lambda2)) {
      throw Error(ErrorKind::InvalidForm, "non-finite multiplier");
    }
    if (std::abs(1.0 - lambda1 * lambda2) <= kDegenerateTol) {
      throw Error(ErrorKind::InvalidForm, "lambda1 * lambda2 = 1");
    }
    return MapForm(LambdaForm{lambda1, lambda2});
  }

  static MapForm per_one(Complex b) {
    if (!is_finite(b)) throw Error(ErrorKind::InvalidForm, "non-finite B");
    return MapForm(PerOneForm{b});
  }

  static MapForm conjugated(MapForm base, const MobiusMap& mobius) {
    return MapForm(ConjugatedForm{std::make_shared<const MapForm>(std::move(base)), mobius});
  }

  const Variant& variant() const noexcept { return form_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&form_);
  }

 private:
  explicit MapForm(Variant form) : form_(std::move(form)) {}

  Variant form_;
};

/// A degree-2 rational map in homogeneous form, (u:v) -> (P(u,v) : Q(u,v)),
/// with P = p[0] u^2 + p[1] uv + p[2] v^2 and Q likewise.
struct QuadraticMap {
  std::array<Complex, 3> p{};
  std::array<Complex, 3> q{};

  SpherePoint operator()(const SpherePoint& z) const {
    const Complex u = z.u();
    const Complex v = z.v();
    const Complex uu = u * u;
    const Complex uv = u * v;
    const Complex vv = v * v;
    return {p[0] * uu + p[1] * uv + p[2] * vv, q[0] * uu + q[1] * uv + q[2] * vv};
  }

  /// Derivative of the map read in `source` chart coordinates at z and in
  /// `target` chart coordinates at the image.
  Complex derivative(const SpherePoint& z, Chart source, Chart target) const {
    const Complex s = z.coordinate(source);
    Complex pv, pd, qv, qd;
    if (source == Chart::Z) {
      pv = (p[0] * s + p[1]) * s + p[2];
      pd = 2.0 * p[0] * s + p[1];
      qv = (q[0] * s + q[1]) * s + q[2];
      qd = 2.0 * q[0] * s + q[1];
    } else {
      pv = p[0] + (p[1] + p[2] * s) * s;
      pd = p[1] + 2.0 * p[2] * s;
      qv = q[0] + (q[1] + q[2] * s) * s;
      qd = q[1] + 2.0 * q[2] * s;
    }
    if (target == Chart::Z) return (pd * qv - pv * qd) / (qv * qv);
    return (qd * pv - qv * pd) / (pv * pv);
  }

  /// Multiplier at a fixed point, read in the point's own chart.
  Complex multiplier(const SpherePoint& fixed) const {
    return derivative(fixed, fixed.chart(), fixed.chart());
  }

  /// Coefficients of the critical-point form P_u Q_v - P_v Q_u, divided by 2.
  std::array<Complex, 3> critical_form() const {
    return {p[0] * q[1] - p[1] * q[0], 2.0 * (p[0] * q[2] - p[2] * q[0]), p[1] * q[2] - p[2] * q[1]};
  }
};

namespace detail {

// f o m, where m acts on homogeneous coordinates: (u, v) -> (a u + b v, c u + d v).
inline std::array<Complex, 3> substitute(const std::array<Complex, 3>& f, const MobiusMap& m) {
  const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  // U = a u + b v, V = c u + d v.
  const std::array<Complex, 3> uu{a * a, 2.0 * a * b, b * b};
  const std::array<Complex, 3> uv{a * c, a * d + b * c, b * d};
  const std::array<Complex, 3> vv{c * c, 2.0 * c * d, d * d};
  std::array<Complex, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = f[0] * uu[k] + f[1] * uv[k] + f[2] * vv[k];
  return out;
}

}  // namespace detail

inline QuadraticMap to_quadratic(const MapForm& form) {
  return std::visit(
      [](const auto& f) -> QuadraticMap {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LambdaForm>) {
          // P = u^2 + l1 uv, Q = l2 uv + v^2
          return {{1.0, f.lambda1, 0.0}, {0.0, f.lambda2, 1.0}};
        } else if constexpr (std::is_same_v<T, PerOneForm>) {
          // P = u^2 + B uv + v^2, Q = uv
          return {{1.0, f.b, 1.0}, {0.0, 1.0, 0.0}};
        } else {
          const QuadraticMap base = to_quadratic(*f.base);
          const MobiusMap& m = f.mobius;
          const MobiusMap inv = m.inverse();
          const auto bp = detail::substitute(base.p, inv);
          const auto bq = detail::substitute(base.q, inv);
          QuadraticMap out;
          for (int k = 0; k < 3; ++k) {
            out.p[k] = m.a() * bp[k] + m.b() * bq[k];
            out.q[k] = m.c() * bp[k] + m.d() * bq[k];
          }
          return out;
        }
      },
      form.variant());
}

}  // namespace quadmod
