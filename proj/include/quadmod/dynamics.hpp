#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "quadmod/complex.hpp"
#include "quadmod/map_form.hpp"
#include "quadmod/moduli.hpp"
#include "quadmod/sphere.hpp"

namespace quadmod {

inline constexpr std::size_t kDefaultBudget = 100000;
inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kMaxCyclePeriod = 16;
inline constexpr double kAttractingGate = 1.0 - 1e-6;
// Floating-point slack applied to every certificate inequality.
inline constexpr double kCertificateSlack = 1e-12;

inline SpherePoint evaluate(const MapForm& form, const SpherePoint& z) {
  return to_quadratic(form)(z);
}

struct CriticalData {
  std::array<SpherePoint, 2> points;
  std::array<SpherePoint, 2> values;
};

/// Roots of a u^2 + b uv + c v^2 in homogeneous form (a = 0 puts one root at infinity).
inline std::array<SpherePoint, 2> homogeneous_quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex root = std::sqrt(b * b - 4.0 * a * c);
  const Complex sum = (std::real(std::conj(b) * root) >= 0.0) ? b + root : b - root;
  const Complex half = -0.5 * sum;
  if (half == Complex{}) {
    // b = 0 and ac = 0: a double root at 0 or at infinity.
    const SpherePoint p = (a != Complex{}) ? SpherePoint::origin() : SpherePoint::infinity();
    return {p, p};
  }
  return {SpherePoint(half, a), SpherePoint(c, half)};
}

/// Critical points and values. For z + B + 1/z these are +1, -1 and B + 2, B - 2.
inline CriticalData critical_points(const MapForm& form) {
  if (const auto* f = form.get_if<PerOneForm>()) {
    return {{SpherePoint::from_complex(1.0), SpherePoint::from_complex(-1.0)},
            {SpherePoint::from_complex(f->b + 2.0), SpherePoint::from_complex(f->b - 2.0)}};
  }
  const QuadraticMap map = to_quadratic(form);
  const auto w = map.critical_form();
  const auto pts = homogeneous_quadratic_roots(w[0], w[1], w[2]);
  return {pts, {map(pts[0]), map(pts[1])}};
}

enum class CertificateKind {
  LargeParameter,  // |B| > 3, |z| > 1, Re(z/B) > 0
  HalfPlane,       // Re(z/B) > 2/|B|^2
};

/// Checked inequalities showing that the orbit of z under z + B + 1/z stays
/// in a forward-invariant region and tends to infinity.
struct EscapeCertificate {
  CertificateKind kind;
  Complex b;
  Complex z;
  double re_z_over_b;  // Re(z/B)
  double threshold;    // Re(z/B) must exceed this
  double step_gain;    // 1 + Re(1/(Bz)): lower bound for the per-step increase of Re(z/B)
  double abs_z;
  double image_abs;    // |g_B(z)|
};

/// Region {|z| > 1, Re(z/B) > 0} for |B| > 3: there Re(g(z)/B) - Re(z/B) =
/// 1 + Re(1/(Bz)) > 2/3 and |g(z)| > 2|B|/3 > 1, so the region is invariant.
inline std::optional<EscapeCertificate> escape_certificate_large_b(Complex b, Complex z) {
  if (!is_finite(b) || !is_finite(z)) return std::nullopt;
  const double abs_b = std::abs(b);
  const double abs_z = std::abs(z);
  if (!(abs_b > 3.0 + kCertificateSlack) || !(abs_z > 1.0 + kCertificateSlack)) return std::nullopt;
  const double t = (z / b).real();
  if (!(t > kCertificateSlack)) return std::nullopt;
  const double gain = 1.0 + (1.0 / (b * z)).real();
  const double image_abs = std::abs(z + b + 1.0 / z);
  if (!(gain > 2.0 / 3.0 + kCertificateSlack)) return std::nullopt;
  if (!(image_abs > 2.0 * abs_b / 3.0 + kCertificateSlack)) return std::nullopt;
  return EscapeCertificate{CertificateKind::LargeParameter, b, z, t, 0.0, gain, abs_z, image_abs};
}

/// Region {Re(z/B) > 2/|B|^2} for any B != 0. Inside it |z| >= |B| Re(z/B) > 2/|B|,
/// so |1/(Bz)| < 1/2 and Re(z/B) grows by more than 1/2 per step.
inline std::optional<EscapeCertificate> escape_certificate_half_plane(Complex b, Complex z) {
  if (b == Complex{} || !is_finite(b) || !is_finite(z)) return std::nullopt;
  const double abs_b = std::abs(b);
  const double threshold = 2.0 / (abs_b * abs_b);
  const double t = (z / b).real();
  if (!(t > threshold + kCertificateSlack)) return std::nullopt;
  const double gain = 1.0 + (1.0 / (b * z)).real();
  if (!(gain > 0.5)) return std::nullopt;
  return EscapeCertificate{CertificateKind::HalfPlane, b, z, t, threshold, gain, std::abs(z),
                           std::abs(z + b + 1.0 / z)};
}

struct AttractedToPoint {
  SpherePoint point;
  Complex multiplier;
  std::size_t steps = 0;
};

struct AttractedToCycle {
  int period = 0;
  Complex multiplier;
  std::size_t steps = 0;
};

struct EscapesParabolic {
  bool certified = false;
  std::size_t steps = 0;
  std::optional<EscapeCertificate> certificate;
};

struct HitFixedPointExactly {
  SpherePoint point;
  std::size_t steps = 0;
};

struct Undetermined {
  std::size_t steps = 0;
};

using Fate = std::variant<AttractedToPoint, AttractedToCycle, EscapesParabolic, HitFixedPointExactly,
                          Undetermined>;

inline std::size_t fate_steps(const Fate& fate) {
  return std::visit([](const auto& f) { return f.steps; }, fate);
}

/// Iterates `form` from `start` for at most `budget` steps.
///
/// For z + B + 1/z (B != 0) every orbit point is tested against the half-plane
/// certificate. Attraction to a cycle of period <= 16 is reported once the
/// orbit returns within chordal distance `tol` of a point p steps back and the
/// cycle multiplier has modulus below 1 - 1e-6. An exact landing on a fixed
/// point is reported as such unless that point is attracting.
inline Fate orbit_fate(const MapForm& form, const SpherePoint& start, std::size_t budget = kDefaultBudget,
                       double tol = kDefaultTol) {
  const QuadraticMap map = to_quadratic(form);
  std::optional<Complex> escape_b;
  if (const auto* f = form.get_if<PerOneForm>(); f != nullptr && f->b != Complex{}) escape_b = f->b;

  const std::vector<FixedPoint> fixed = fixed_points_and_multipliers(form);
  constexpr double kSnap = 1e-6;
  auto nearest_fixed = [&fixed](const SpherePoint& z) -> const FixedPoint* {
    const FixedPoint* best = nullptr;
    double best_d = kSnap;
    for (const FixedPoint& fp : fixed) {
      const double d = chordal_distance(fp.point, z);
      if (d < best_d) {
        best_d = d;
        best = &fp;
      }
    }
    return best;
  };
  const double parabolic_radius = std::sqrt(tol);

  struct Visit {
    SpherePoint point;
    double norm2;
    Complex derivative;  // chart(point) -> chart(next)
  };
  constexpr std::size_t kRing = kMaxCyclePeriod;
  std::array<Visit, kRing> ring{};
  std::size_t seen = 0;

  SpherePoint z = start;
  for (std::size_t step = 0; step < budget; ++step) {
    if (escape_b && !z.is_infinity()) {
      if (auto cert = escape_certificate_half_plane(*escape_b, z.to_complex())) {
        return EscapesParabolic{true, step, cert};
      }
    }
    const SpherePoint next = map(z);
    if (next == z) {
      const Complex m = map.multiplier(z);
      if (std::abs(m) < kAttractingGate) return AttractedToPoint{z, m, step + 1};
      return HitFixedPointExactly{z, step + 1};
    }
    ring[seen % kRing] = Visit{z, std::norm(z.u()) + std::norm(z.v()), map.derivative(z, z.chart(), next.chart())};
    ++seen;
    z = next;

    for (const FixedPoint& fp : fixed) {
      if (!(fp.point == z)) continue;
      if (std::abs(fp.multiplier) < kAttractingGate) return AttractedToPoint{fp.point, fp.multiplier, step + 1};
      return HitFixedPointExactly{fp.point, step + 1};
    }

    const double z_norm2 = std::norm(z.u()) + std::norm(z.v());
    const std::size_t depth = std::min<std::size_t>(seen, kRing);
    for (std::size_t period = 1; period <= depth; ++period) {
      const Visit& back = ring[(seen - period) % kRing];
      const double cross2 = std::norm(z.u() * back.point.v() - back.point.u() * z.v());
      if (cross2 >= tol * tol * z_norm2 * back.norm2) continue;
      // Cycle multiplier along the last `period` visits, closing the loop in
      // the chart where it started.
      Complex m = 1.0;
      for (std::size_t k = period; k >= 2; --k) m *= ring[(seen - k) % kRing].derivative;
      const Visit& last = ring[(seen - 1) % kRing];
      m *= (back.point.chart() == z.chart())
               ? last.derivative
               : map.derivative(last.point, last.point.chart(), back.point.chart());
      if (!(std::abs(m) < kAttractingGate)) continue;
      if (period == 1) {
        if (const FixedPoint* fp = nearest_fixed(z)) {
          return AttractedToPoint{fp->point, fp->multiplier, step + 1};
        }
        return AttractedToPoint{z, m, step + 1};
      }
      return AttractedToCycle{static_cast<int>(period), m, step + 1};
    }

    for (const FixedPoint& fp : fixed) {
      if (std::abs(fp.multiplier - 1.0) < 1e-9 && chordal_distance(fp.point, z) < parabolic_radius) {
        return EscapesParabolic{false, step + 1, std::nullopt};
      }
    }
  }
  return Undetermined{budget};
}

}  // namespace quadmod
