#pragma once

#include <cmath>
#include <limits>

#include "quadmod/complex.hpp"
#include "quadmod/error.hpp"

namespace quadmod {

enum class Chart {
  Z,  // coordinate u/v, used where |u| <= |v|
  W,  // coordinate v/u, used where |u| > |v|
};

/// A point u/v of the Riemann sphere in homogeneous coordinates.
///
/// The pair is kept in a canonical representative: the larger coordinate is
/// divided out, so the point is either (z, 1) with |z| <= 1 or (1, w) with
/// |w| < 1. Two representatives of the same point therefore compare equal
/// whenever the division is exact (scalings by powers of two, say); use
/// chordal_distance for tolerance comparisons.
class SpherePoint {
 public:
  SpherePoint() = default;

  SpherePoint(Complex u, Complex v) {
    if (u == Complex{} && v == Complex{}) {
      throw Error(ErrorKind::InvalidForm, "homogeneous pair (0, 0) is not a sphere point");
    }
    if (std::abs(u) > std::abs(v)) {
      u_ = 1.0;
      v_ = v / u;
    } else {
      u_ = u / v;
      v_ = 1.0;
    }
  }

  static SpherePoint from_complex(Complex z) {
    if (!is_finite(z)) return infinity();
    return {z, 1.0};
  }
  static SpherePoint infinity() { return {1.0, 0.0}; }
  static SpherePoint origin() { return {0.0, 1.0}; }

  Complex u() const noexcept { return u_; }
  Complex v() const noexcept { return v_; }

  bool is_infinity() const noexcept { return v_ == Complex{}; }

  Chart chart() const noexcept { return v_ == Complex(1.0, 0.0) ? Chart::Z : Chart::W; }

  /// Coordinate of the point in the requested chart (may be infinite).
  Complex coordinate(Chart c) const {
    return c == Chart::Z ? ratio(u_, v_) : ratio(v_, u_);
  }

  /// u/v as a complex number; infinity maps to (inf, 0).
  Complex to_complex() const { return coordinate(Chart::Z); }

  double norm() const noexcept { return std::sqrt(std::norm(u_) + std::norm(v_)); }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }

 private:
  static Complex ratio(Complex num, Complex den) {
    if (den == Complex{}) return {std::numeric_limits<double>::infinity(), 0.0};
    if (den == Complex(1.0, 0.0)) return num;
    return num / den;
  }

  Complex u_{0.0};
  Complex v_{1.0};
};

/// Chordal distance on the sphere, in [0, 1].
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  const double cross = std::abs(a.u() * b.v() - b.u() * a.v());
  return cross / (a.norm() * b.norm());
}

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MobiusMap {
 public:
  MobiusMap() = default;

  MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (determinant() == Complex{}) {
      throw Error(ErrorKind::InvalidForm, "Mobius map with ad - bc = 0");
    }
  }

  static MobiusMap identity() { return {}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  SpherePoint operator()(const SpherePoint& p) const {
    return {a_ * p.u() + b_ * p.v(), c_ * p.u() + d_ * p.v()};
  }

  MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }

  /// (*this) after `inner`.
  MobiusMap compose(const MobiusMap& inner) const {
    return {a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
            c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_};
  }

 private:
  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

/// The Mobius map sending src[0], src[1], src[2] to dst[0], dst[1], dst[2].
/// Throws DegenerateCorrespondence unless both triples are pairwise distinct.
inline MobiusMap mobius_from_three_points(const SpherePoint (&src)[3], const SpherePoint (&dst)[3]) {
  constexpr double kDistinct = 1e-14;
  auto to_standard = [&](const SpherePoint (&pts)[3], const char* which) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (chordal_distance(pts[i], pts[j]) <= kDistinct) {
          throw Error(ErrorKind::DegenerateCorrespondence,
                      std::string(which) + " points are not pairwise distinct");
        }
      }
    }
    // Sends pts[0] -> 0, pts[1] -> infinity, pts[2] -> 1.
    const SpherePoint& p0 = pts[0];
    const SpherePoint& p1 = pts[1];
    const SpherePoint& p2 = pts[2];
    const Complex l0 = p2.u() * p0.v() - p2.v() * p0.u();
    const Complex l1 = p2.u() * p1.v() - p2.v() * p1.u();
    const Complex k = l1 / l0;
    return MobiusMap(k * p0.v(), -k * p0.u(), p1.v(), -p1.u());
  };
  const MobiusMap from_src = to_standard(src, "source");
  const MobiusMap from_dst = to_standard(dst, "target");
  return from_dst.inverse().compose(from_src);
}

}  // namespace quadmod
