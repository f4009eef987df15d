#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "quadmod/ppm.hpp"
#include "quadmod/quadmod.hpp"

using namespace quadmod;

namespace {

RasterJob dynamical_job(Complex center, double size, std::size_t pixels) {
  RasterJob job;
  job.mode = RasterMode::Dynamical;
  job.window = {center, size, size, pixels, pixels};
  job.budget = 2000;
  return job;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Window, PixelCentersAreMirrored) {
  const Window w = default_parameter_window(400, 400);
  for (std::size_t col = 0; col < 400; col += 7) {
    for (std::size_t row = 0; row < 200; row += 5) {
      const Complex a = w.pixel(col, row), b = w.pixel(col, 399 - row);
      EXPECT_EQ(a.real(), b.real());
      EXPECT_EQ(a.imag() - w.center.imag(), -(b.imag() - w.center.imag()));
    }
  }
  EXPECT_DOUBLE_EQ(w.pixel(0, 0).real(), -9.0 + 0.025);
  EXPECT_DOUBLE_EQ(w.pixel(0, 0).imag(), 10.0 - 0.025);
}

TEST(ParameterPlane, FarWindowIsCantor) {
  RasterJob job;
  job.window = {{30.0, 0.0}, 10.0, 10.0, 16, 16};
  const ImageBuffer img = raster_parameter_plane(job, 1);
  EXPECT_EQ(img.count(PixelClass::Cantor), 256u);
}

TEST(ParameterPlane, OnePixelAtZero) {
  RasterJob job;
  job.window = {{0.0, 0.0}, 0.01, 0.01, 1, 1};
  const ImageBuffer img = raster_parameter_plane(job, 1);
  EXPECT_EQ(img.count(PixelClass::Connected), 1u);
  EXPECT_EQ(img.at(0, 0), (std::array<std::uint8_t, 3>{0, 0, 0}));
}

TEST(ParameterPlane, ConnectedInsideBound) {
  RasterJob job;
  job.window = default_parameter_window(120, 120);
  job.budget = 2000;
  const ImageBuffer img = raster_parameter_plane(job, 2);
  EXPECT_GT(img.count(PixelClass::Connected), 0u);
  EXPECT_GT(img.count(PixelClass::Cantor), 0u);
  for (std::size_t row = 0; row < 120; ++row) {
    for (std::size_t col = 0; col < 120; ++col) {
      if (img.at(col, row) == palette::kBlack) {
        EXPECT_LE(std::abs(job.window.pixel(col, row) - 1.0), 9.0);
      }
    }
  }
}

TEST(ParameterPlane, DeterministicAcrossThreadsAndTiles) {
  RasterJob job;
  job.window = default_parameter_window(50, 50);
  job.budget = 1000;
  job.tile = 64;
  const ImageBuffer base = raster_parameter_plane(job, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    for (std::size_t tile : {1u, 7u, 16u, 256u}) {
      RasterJob j = job;
      j.tile = tile;
      const ImageBuffer img = raster_parameter_plane(j, threads);
      EXPECT_EQ(img.rgb, base.rgb) << threads << " " << tile;
      EXPECT_EQ(img.tally, base.tally);
    }
  }
}

TEST(ParameterPlane, MirrorSymmetric) {
  RasterJob job;
  job.window = default_parameter_window(64, 64);
  job.budget = 1000;
  const ImageBuffer img = raster_parameter_plane(job, 1);
  for (std::size_t row = 0; row < 32; ++row) {
    for (std::size_t col = 0; col < 64; ++col) EXPECT_EQ(img.at(col, row), img.at(col, 63 - row));
  }
}

TEST(ParameterPlane, RejectsBadJobs) {
  RasterJob job;
  job.window.pixels_wide = 0;
  EXPECT_THROW(raster_parameter_plane(job, 1), std::invalid_argument);
  RasterJob p;
  p.palette = "neon";
  p.window = default_parameter_window(2, 2);
  EXPECT_THROW(raster_parameter_plane(p, 1), std::invalid_argument);
  RasterJob d;
  d.mode = RasterMode::Dynamical;
  EXPECT_THROW(raster_parameter_plane(d, 1), std::invalid_argument);
}

TEST(DynamicalPlane, SquareMapBasins) {
  // 9 x 9 pixels over [-2.25, 2.25]^2: centers on the half-integer grid.
  const RasterJob job = dynamical_job(0.0, 4.5, 9);
  ASSERT_EQ(job.window.pixel(5, 4), Complex(0.5, 0.0));
  ASSERT_EQ(job.window.pixel(7, 4), Complex(1.5, 0.0));
  const ImageBuffer img = raster_dynamical_plane(job, MapForm::lambda(0.0, 0.0), 1);
  const ImageBuffer inner = raster_dynamical_plane(dynamical_job(0.5, 0.1, 1), MapForm::lambda(0.0, 0.0), 1);
  const ImageBuffer outer = raster_dynamical_plane(dynamical_job(1.5, 0.1, 1), MapForm::lambda(0.0, 0.0), 1);
  EXPECT_EQ(inner.count(PixelClass::BasinFirst), 1u);
  EXPECT_EQ(outer.count(PixelClass::BasinSecond), 1u);
  EXPECT_EQ(img.at(5, 4), inner.at(0, 0));
  EXPECT_EQ(img.at(7, 4), outer.at(0, 0));
  EXPECT_NE(inner.at(0, 0), outer.at(0, 0));
}

TEST(DynamicalPlane, SymmetricMapBoundaryIsUnitCircle) {
  const Complex l1 = std::polar(0.5, kPi / 4);
  const MapForm f = mobius_conjugate_symmetric({l1, std::conj(l1)}, 0.5);
  const std::size_t n = 101;
  const RasterJob job = dynamical_job(0.0, 4.0, n);
  const ImageBuffer img = raster_dynamical_plane(job, f, 2);
  const double diag = std::sqrt(2.0) * 4.0 / static_cast<double>(n);
  std::size_t checked = 0;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const double r = std::abs(job.window.pixel(col, row));
      if (std::abs(r - 1.0) <= diag) continue;
      const auto rgb = img.at(col, row);
      // BasinFirst colors have blue as the brightest channel, BasinSecond red.
      const bool is_first = rgb[2] > rgb[0];
      EXPECT_EQ(is_first, r < 1.0) << job.window.pixel(col, row);
      ++checked;
    }
  }
  EXPECT_GT(checked, n * n / 2);
  EXPECT_EQ(img.count(PixelClass::Undetermined), 0u);
}

TEST(DynamicalPlane, PerOneEscapeShading) {
  const MapForm g = MapForm::per_one(4.0);
  for (Complex v : {Complex(6.0), Complex(2.0)}) {
    const ImageBuffer img = raster_dynamical_plane(dynamical_job(v, 0.01, 1), g, 1);
    EXPECT_EQ(img.count(PixelClass::Escaping), 1u) << v;
    EXPECT_NE(img.at(0, 0), palette::kBlack);
  }
}

TEST(DynamicalPlane, UnsupportedForms) {
  const RasterJob job = dynamical_job(0.0, 4.0, 2);
  try {
    raster_dynamical_plane(job, MapForm::lambda(2.0, 0.3), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedForm);
  }
}

TEST(SymmetricConjugate, FixedPoints) {
  const Complex l1 = std::polar(0.5, kPi / 4);
  const MapForm f = mobius_conjugate_symmetric({l1, std::conj(l1)}, 0.5);
  for (Complex z : {Complex(-0.5), Complex(-2.0), Complex(1.0)}) {
    EXPECT_LT(std::abs(evaluate(f, SpherePoint::from_complex(z)).to_complex() - z), 1e-9) << z;
  }
}

TEST(SymmetricConjugate, IdentityCorrespondence) {
  const LambdaForm base{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  const SpherePoint z3(1.0 - base.lambda1, 1.0 - base.lambda2);
  const SpherePoint pts[3] = {SpherePoint::origin(), SpherePoint::infinity(), z3};
  const MapForm f = MapForm::conjugated(MapForm::lambda(base.lambda1, base.lambda2), mobius_from_three_points(pts, pts));
  const MapForm g = MapForm::lambda(base.lambda1, base.lambda2);
  for (std::size_t i = 0; i < 1000; ++i) {
    CounterRng rng(2, i);
    const SpherePoint z = SpherePoint::from_complex(rng.in_disk(10.0));
    EXPECT_LT(chordal_distance(evaluate(f, z), evaluate(g, z)), 1e-12);
  }
}

TEST(SymmetricConjugate, Errors) {
  try {
    mobius_conjugate_symmetric({0.5, 1.0}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCorrespondence);
  }
  EXPECT_THROW(mobius_conjugate_symmetric({0.5, 0.5}, 1.0), Error);
  EXPECT_THROW(mobius_conjugate_symmetric({0.5, 0.5}, 0.0), Error);
}

TEST(Ppm, Encoding) {
  ImageBuffer white{1, 1, {255, 255, 255}, {}};
  const std::vector<std::uint8_t> a = encode_ppm(white);
  const std::string header = "P6\n1 1\n255\n";
  ASSERT_EQ(a.size(), header.size() + 3);
  EXPECT_EQ(std::string(a.begin(), a.begin() + header.size()), header);
  EXPECT_EQ(a.back(), 0xff);

  ImageBuffer two{2, 1, {0, 0, 0, 255, 0, 0}, {}};
  const std::vector<std::uint8_t> b = encode_ppm(two);
  const std::string h2 = "P6\n2 1\n255\n";
  EXPECT_EQ(std::vector<std::uint8_t>(b.begin() + h2.size(), b.end()), (std::vector<std::uint8_t>{0, 0, 0, 255, 0, 0}));
}

TEST(Ppm, GoldenFixture) {
  const std::vector<std::uint8_t> golden = read_file(std::string(QUADMOD_FIXTURES) + "/golden_8x8.ppm");
  ASSERT_FALSE(golden.empty());
  RasterJob job;
  job.window = default_parameter_window(8, 8);
  job.budget = 1000;
  for (unsigned threads : {1u, 2u, 8u}) {
    for (std::size_t tile : {1u, 3u, 64u}) {
      job.tile = tile;
      EXPECT_EQ(encode_ppm(raster_parameter_plane(job, threads)), golden) << threads << " " << tile;
    }
  }
}
