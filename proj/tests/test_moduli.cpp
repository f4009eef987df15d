#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "quadmod/quadmod.hpp"

using namespace quadmod;

namespace {

void expect_near(Complex a, Complex b, double tol) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidForm;
}

}  // namespace

TEST(Lambda3, SquareMap) { expect_near(lambda3_from_eq1(0.0, 0.0), 2.0, 1e-15); }

TEST(Lambda3, RationalExample) {
  // 50-digit oracle: 7/5
  expect_near(lambda3_from_eq1(0.5, 1.0 / 3.0), 1.4, 1e-14);
}

TEST(Lambda3, ReciprocalPairIsInvalid) {
  EXPECT_EQ(kind_of([] { lambda3_from_eq1(0.9, 1.0 / 0.9); }), ErrorKind::InvalidForm);
}

TEST(Lambda3, UnitMultiplierIsDegenerate) {
  EXPECT_EQ(kind_of([] { lambda3_from_eq1(1.0, 0.3); }), ErrorKind::DegenerateFixedPoints);
  EXPECT_EQ(kind_of([] { lambda3_from_eq1(Complex(0.2, 0.1), 1.0); }), ErrorKind::DegenerateFixedPoints);
}

TEST(Lambda3, RelationResidualOnRandomPairs) {
  for (std::size_t i = 0; i < 2000; ++i) {
    CounterRng rng(3, i);
    const Complex l1 = rng.in_disk(2.0), l2 = rng.in_disk(2.0);
    if (std::abs(l1 * l2 - 1.0) < 1e-6 || near_one(l1) || near_one(l2)) continue;
    EXPECT_LT(fixed_point_relation_residual({l1, l2, lambda3_from_eq1(l1, l2)}), 1e-12) << l1 << l2;
  }
}

TEST(FixedPoints, SquareMap) {
  const auto fps = fixed_points_and_multipliers(MapForm::lambda(0.0, 0.0));
  ASSERT_EQ(fps.size(), 3u);
  EXPECT_EQ(fps[0].point, SpherePoint::origin());
  EXPECT_TRUE(fps[1].point.is_infinity());
  expect_near(fps[2].point.to_complex(), 1.0, 1e-15);
  expect_near(fps[0].multiplier, 0.0, 1e-15);
  expect_near(fps[1].multiplier, 0.0, 1e-15);
  expect_near(fps[2].multiplier, 2.0, 1e-15);
  for (const auto& fp : fps) EXPECT_EQ(fp.multiplicity, 1);
}

TEST(FixedPoints, PerOneTwo) {
  const auto fps = fixed_points_and_multipliers(MapForm::per_one(2.0));
  ASSERT_EQ(fps.size(), 2u);
  EXPECT_TRUE(fps[0].point.is_infinity());
  EXPECT_EQ(fps[0].multiplicity, 2);
  expect_near(fps[0].multiplier, 1.0, 1e-15);
  expect_near(fps[1].point.to_complex(), -0.5, 1e-15);
  expect_near(fps[1].multiplier, -3.0, 1e-14);
  EXPECT_EQ(fps[1].multiplicity, 1);
}

TEST(FixedPoints, PerOneZeroIsTriple) {
  const auto fps = fixed_points_and_multipliers(MapForm::per_one(0.0));
  ASSERT_EQ(fps.size(), 1u);
  EXPECT_TRUE(fps[0].point.is_infinity());
  EXPECT_EQ(fps[0].multiplicity, 3);
  expect_near(fps[0].multiplier, 1.0, 1e-15);
}

TEST(FixedPoints, RationalExample) {
  const auto fps = fixed_points_and_multipliers(MapForm::lambda(0.5, 1.0 / 3.0));
  ASSERT_EQ(fps.size(), 3u);
  expect_near(fps[0].multiplier, 0.5, 1e-15);
  expect_near(fps[1].multiplier, 1.0 / 3.0, 1e-15);
  expect_near(fps[2].point.to_complex(), 0.75, 1e-15);
  expect_near(fps[2].multiplier, 1.4, 1e-14);
}

TEST(FixedPoints, MergedPointHasMultiplicityTwo) {
  const auto fps = fixed_points_and_multipliers(MapForm::lambda(Complex(0.3, 0.2), 1.0));
  ASSERT_EQ(fps.size(), 2u);
  int total = 0;
  for (const auto& fp : fps) total += fp.multiplicity;
  EXPECT_EQ(total, 3);
}

TEST(FixedPoints, ConjugationPreservesMultipliers) {
  const MobiusMap m(Complex(1, 2), 0.5, Complex(0, -1), 3.0);
  for (std::size_t i = 0; i < 200; ++i) {
    CounterRng rng(11, i);
    const Complex l1 = rng.in_disk(3.0), l2 = rng.in_disk(3.0);
    if (std::abs(l1 * l2 - 1.0) < 1e-3 || std::abs(l1 - 1.0) < 1e-3 || std::abs(l2 - 1.0) < 1e-3) continue;
    const MapForm base = MapForm::lambda(l1, l2);
    const auto a = fixed_points_and_multipliers(base);
    const auto b = fixed_points_and_multipliers(MapForm::conjugated(base, m));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_LT(chordal_distance(m(a[k].point), b[k].point), 1e-10);
      EXPECT_LT(std::abs(a[k].multiplier - b[k].multiplier), 1e-8 * (1 + std::abs(a[k].multiplier)));
    }
  }
}

TEST(FixedPoints, PointsAreFixed) {
  for (std::size_t i = 0; i < 500; ++i) {
    CounterRng rng(5, i);
    const MapForm f = (i % 2) ? MapForm::per_one(rng.in_disk(4.0)) : MapForm::lambda(rng.in_disk(2.0), rng.in_disk(2.0));
    const QuadraticMap q = to_quadratic(f);
    for (const auto& fp : fixed_points_and_multipliers(f)) EXPECT_LT(chordal_distance(q(fp.point), fp.point), 1e-9);
  }
}

TEST(Sigma, Examples) {
  const ModuliPoint a = sigma_coordinates({0.0, 0.0, 2.0});
  expect_near(a.sigma1, 2.0, 0);
  expect_near(a.sigma2, 0.0, 0);
  const ModuliPoint b = sigma_coordinates({0.5, 1.0 / 3.0, 1.4});
  expect_near(b.sigma1, 67.0 / 30.0, 1e-15);
  expect_near(b.sigma2, 4.0 / 3.0, 1e-15);
  expect_near(b.sigma3(), 7.0 / 30.0, 1e-15);
  const ModuliPoint r = sigma_coordinates({1.0, 1.0, 1.0});
  expect_near(r.sigma1, 3.0, 0);
  expect_near(r.sigma2, 3.0, 0);
}

TEST(Sigma, InconsistentTriple) {
  EXPECT_EQ(kind_of([] { sigma_coordinates({0.0, 0.0, 0.0}); }), ErrorKind::InconsistentTriple);
  EXPECT_EQ(kind_of([] { sigma_coordinates({0.5, 0.5, 3.0}); }), ErrorKind::InconsistentTriple);
}

TEST(Sigma, IdentityOnComputedMultipliers) {
  for (std::size_t i = 0; i < 2000; ++i) {
    CounterRng rng(17, i);
    const MapForm f = (i % 2) ? MapForm::per_one(rng.in_disk(5.0)) : MapForm::lambda(rng.in_disk(3.0), rng.in_disk(3.0));
    EXPECT_LT(sigma_identity_residual(eigenvalue_triple(f)), 1e-9);
  }
}

TEST(EigenvaluesFromSigma, Examples) {
  const auto a = eigenvalues_from_sigma({2.0, 0.0}).values();
  expect_near(a[0], 0.0, 1e-7);
  expect_near(a[1], 0.0, 1e-7);
  expect_near(a[2], 2.0, 1e-14);
  const auto r = eigenvalues_from_sigma({3.0, 3.0}).values();
  for (Complex z : r) expect_near(z, 1.0, 1e-5);
  const auto c = eigenvalues_from_sigma({67.0 / 30.0, 4.0 / 3.0}).values();
  expect_near(c[0], 1.0 / 3.0, 1e-13);
  expect_near(c[1], 0.5, 1e-13);
  expect_near(c[2], 1.4, 1e-13);
}

TEST(EigenvaluesFromSigma, RoundTrip) {
  for (std::size_t i = 0; i < 1000; ++i) {
    CounterRng rng(23, i);
    const Complex l1 = rng.in_disk(2.0), l2 = rng.in_disk(2.0);
    if (std::abs(l1 * l2 - 1.0) < 1e-2 || std::abs(l1 - 1.0) < 1e-2 || std::abs(l2 - 1.0) < 1e-2) continue;
    const EigenvalueTriple t{l1, l2, lambda3_from_eq1(l1, l2)};
    const ModuliPoint p = sigma_coordinates(t);
    EXPECT_LT(moduli_distance(sigma_coordinates(eigenvalues_from_sigma(p)), p), 1e-9 * (1 + std::abs(p.sigma1)));
  }
}

TEST(EigenvaluesFromSigma, SortedLexicographically) {
  const auto v = eigenvalues_from_sigma(sigma_coordinates({Complex(0.2, 0.5), Complex(-0.4, 0.1), lambda3_from_eq1(Complex(0.2, 0.5), Complex(-0.4, 0.1))})).values();
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end(), lex_less));
}

TEST(PerOneFromLambda, Examples) {
  expect_near(per1_form_from_lambda(1.0).get_if<PerOneForm>()->b, 0.0, 0);
  expect_near(per1_form_from_lambda(-3.0).get_if<PerOneForm>()->b, 2.0, 1e-15);
  expect_near(per1_form_from_lambda(2.0).get_if<PerOneForm>()->b, Complex(0, 1), 1e-15);
}

TEST(PerOneFromLambda, MultiplierMatches) {
  for (std::size_t i = 0; i < 500; ++i) {
    CounterRng rng(29, i);
    const Complex lambda = rng.in_disk(10.0);
    const auto t = eigenvalue_triple(per1_form_from_lambda(lambda));
    expect_near(t.lambda1, 1.0, 1e-12);
    expect_near(t.lambda2, 1.0, 1e-12);
    expect_near(t.lambda3, lambda, 1e-10 * (1 + std::abs(lambda)));
  }
}

TEST(ModuliDistance, Examples) {
  const ModuliPoint p{Complex(0.3, 1), Complex(2, -1)};
  EXPECT_EQ(moduli_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(moduli_distance({2.0, 0.0}, {3.0, 3.0}), 3.0);
  const Complex l1(0.2, 0.3), l2(-0.5, 0.1), l3 = lambda3_from_eq1(l1, l2);
  EXPECT_LT(moduli_distance(sigma_coordinates({l1, l2, l3}), sigma_coordinates({l3, l1, l2})), 1e-15);
}

TEST(MapForm, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { MapForm::lambda(2.0, 0.5); }), ErrorKind::InvalidForm);
  EXPECT_EQ(kind_of([] { MapForm::lambda(Complex(NAN, 0), 0.5); }), ErrorKind::InvalidForm);
  EXPECT_EQ(kind_of([] { MapForm::per_one(Complex(INFINITY, 0)); }), ErrorKind::InvalidForm);
}

TEST(Sphere, ChartsAndInfinity) {
  EXPECT_TRUE(SpherePoint::from_complex(1e300).chart() == Chart::W);
  EXPECT_TRUE(SpherePoint::from_complex(0.5).chart() == Chart::Z);
  EXPECT_EQ(kind_of([] { SpherePoint(0.0, 0.0); }), ErrorKind::InvalidForm);
  EXPECT_DOUBLE_EQ(chordal_distance(SpherePoint::origin(), SpherePoint::infinity()), 1.0);
}

TEST(Mobius, ThreePointCorrespondence) {
  const SpherePoint src[3] = {SpherePoint::origin(), SpherePoint::infinity(), SpherePoint::from_complex(2.0)};
  const SpherePoint dst[3] = {SpherePoint::from_complex(1.0), SpherePoint::from_complex(Complex(0, 1)),
                              SpherePoint::from_complex(-3.0)};
  const MobiusMap m = mobius_from_three_points(src, dst);
  for (int k = 0; k < 3; ++k) EXPECT_LT(chordal_distance(m(src[k]), dst[k]), 1e-14);
  const SpherePoint bad[3] = {SpherePoint::origin(), SpherePoint::origin(), SpherePoint::infinity()};
  EXPECT_EQ(kind_of([&] { mobius_from_three_points(bad, dst); }), ErrorKind::DegenerateCorrespondence);
}
