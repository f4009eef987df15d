#pragma once

// Tile-parallel rendering of the Per_1(1) parameter plane and of dynamical
// planes. Every pixel is a pure function of the job, and tiles write to
// disjoint ranges of a preallocated buffer, so output bytes do not depend on
// the thread count or tile size.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadmod/classify.hpp"
#include "quadmod/complex.hpp"
#include "quadmod/dynamics.hpp"
#include "quadmod/error.hpp"
#include "quadmod/map_form.hpp"
#include "quadmod/parallel.hpp"
#include "quadmod/sphere.hpp"

namespace quadmod {

/// A rectangle of the plane sampled at pixel centers. Row 0 is the top
/// (largest imaginary part); pixel (col, row) sits at
///   center + ((2 col + 1 - w) width / 2w) + i ((h - 2 row - 1) height / 2h).
/// The offsets for mirrored rows are exact negatives of each other.
struct Window {
  Complex center{1.0, 0.0};
  double width = 20.0;
  double height = 20.0;
  std::size_t pixels_wide = 400;
  std::size_t pixels_high = 400;

  Complex pixel(std::size_t col, std::size_t row) const {
    const double w = static_cast<double>(pixels_wide);
    const double h = static_cast<double>(pixels_high);
    const double dx = (static_cast<double>(2 * col + 1) - w) * width / (2.0 * w);
    const double dy = (h - static_cast<double>(2 * row + 1)) * height / (2.0 * h);
    return {center.real() + dx, center.imag() + dy};
  }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Re in [-9, 11], Im in [-10, 10]: contains |lambda - 1| <= 9 with margin.
inline Window default_parameter_window(std::size_t w = 400, std::size_t h = 400) {
  return {{1.0, 0.0}, 20.0, 20.0, w, h};
}

enum class RasterMode { Parameter, Dynamical };

struct RasterJob {
  RasterMode mode = RasterMode::Parameter;
  Window window = default_parameter_window();
  TierPolicy tiers;
  std::size_t budget = 10000;
  double tol = kDefaultTol;
  std::size_t tile = 64;
  std::string palette = "default";

  friend bool operator==(const RasterJob&, const RasterJob&) = default;
};

enum class PixelClass : std::size_t {
  Connected,
  Cantor,
  Undetermined,
  BasinFirst,   // attracted to the image of 0
  BasinSecond,  // attracted to the image of infinity
  Escaping,     // certified escape to the parabolic point
  NonEscaping,
  Count,
};

inline constexpr std::size_t kPixelClassCount = static_cast<std::size_t>(PixelClass::Count);

constexpr std::string_view to_string(PixelClass c) noexcept {
  switch (c) {
    case PixelClass::Connected: return "connected";
    case PixelClass::Cantor: return "cantor";
    case PixelClass::Undetermined: return "undetermined";
    case PixelClass::BasinFirst: return "basin_first";
    case PixelClass::BasinSecond: return "basin_second";
    case PixelClass::Escaping: return "escaping";
    case PixelClass::NonEscaping: return "non_escaping";
    case PixelClass::Count: break;
  }
  return "?";
}

using PixelTally = std::array<std::size_t, kPixelClassCount>;

struct ImageBuffer {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major RGB8
  PixelTally tally{};

  std::size_t count(PixelClass c) const { return tally[static_cast<std::size_t>(c)]; }

  std::array<std::uint8_t, 3> at(std::size_t col, std::size_t row) const {
    const std::size_t k = 3 * (row * width + col);
    return {rgb[k], rgb[k + 1], rgb[k + 2]};
  }
};

namespace palette {

// Gray level indexed by bit_width(steps): 255 for steps = 0, fading to 95.
inline constexpr std::array<std::uint8_t, 65> kShade = [] {
  std::array<std::uint8_t, 65> t{};
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<std::uint8_t>(255 - (k * 160) / 64);
  return t;
}();

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kRed{255, 0, 0};

inline std::uint8_t shade(std::size_t steps) { return kShade[std::bit_width(steps)]; }

inline Rgb color(PixelClass c, std::size_t steps) {
  const std::uint8_t s = shade(steps);
  switch (c) {
    case PixelClass::Connected: return kBlack;
    case PixelClass::Cantor: return {s, s, s};
    case PixelClass::BasinFirst: return {static_cast<std::uint8_t>(s / 4), static_cast<std::uint8_t>(s / 2), s};
    case PixelClass::BasinSecond: return {s, static_cast<std::uint8_t>(s / 2), static_cast<std::uint8_t>(s / 4)};
    case PixelClass::Escaping: return {s, s, s};
    case PixelClass::NonEscaping: return kBlack;
    default: return kRed;
  }
}

}  // namespace palette

struct PixelResult {
  PixelClass cls;
  std::size_t steps;
};

namespace detail {

template <typename PixelFn>
ImageBuffer render_tiles(const RasterJob& job, unsigned threads, PixelFn&& pixel_fn) {
  if (job.palette != "default") throw std::invalid_argument("unknown palette '" + job.palette + "'");
  const Window& win = job.window;
  if (win.pixels_wide == 0 || win.pixels_high == 0 || !(win.width > 0.0) || !(win.height > 0.0)) {
    throw std::invalid_argument("window needs positive size and resolution");
  }
  const std::size_t tile = job.tile == 0 ? 64 : job.tile;
  const std::size_t tiles_x = (win.pixels_wide + tile - 1) / tile;
  const std::size_t tiles_y = (win.pixels_high + tile - 1) / tile;

  ImageBuffer img;
  img.width = win.pixels_wide;
  img.height = win.pixels_high;
  img.rgb.assign(3 * img.width * img.height, 0);
  std::vector<PixelTally> tile_tally(tiles_x * tiles_y, PixelTally{});

  parallel_for(tiles_x * tiles_y, resolve_thread_count(threads), [&](std::size_t t) {
    const std::size_t col0 = (t % tiles_x) * tile;
    const std::size_t row0 = (t / tiles_x) * tile;
    const std::size_t col1 = std::min(col0 + tile, img.width);
    const std::size_t row1 = std::min(row0 + tile, img.height);
    PixelTally& tally = tile_tally[t];
    for (std::size_t row = row0; row < row1; ++row) {
      for (std::size_t col = col0; col < col1; ++col) {
        const PixelResult r = pixel_fn(win.pixel(col, row));
        ++tally[static_cast<std::size_t>(r.cls)];
        const auto rgb = palette::color(r.cls, r.steps);
        const std::size_t k = 3 * (row * img.width + col);
        img.rgb[k] = rgb[0];
        img.rgb[k + 1] = rgb[1];
        img.rgb[k + 2] = rgb[2];
      }
    }
  });
  for (const PixelTally& tt : tile_tally) {
    for (std::size_t c = 0; c < kPixelClassCount; ++c) img.tally[c] += tt[c];
  }
  return img;
}

}  // namespace detail

inline PixelResult classify_parameter_pixel(Complex lambda, const RasterJob& job) {
  const Verdict v = connectivity_per1(lambda, job.tiers, job.budget, job.tol);
  switch (v.connectivity) {
    case Connectivity::Connected: return {PixelClass::Connected, v.steps};
    case Connectivity::Cantor: return {PixelClass::Cantor, v.steps};
    case Connectivity::Undetermined: break;
  }
  return {PixelClass::Undetermined, v.steps};
}

/// The lambda-plane picture of the connectedness locus of Per_1(1).
/// Connected is black, Cantor is white shaded by escape steps, Undetermined is red.
inline ImageBuffer raster_parameter_plane(const RasterJob& job, unsigned threads = 0) {
  if (job.mode != RasterMode::Parameter) throw std::invalid_argument("job mode is not parameter");
  return detail::render_tiles(job, threads, [&job](Complex lambda) { return classify_parameter_pixel(lambda, job); });
}

namespace detail {

// Strips conjugations: form = outer o base o outer^-1.
inline std::pair<MapForm, MobiusMap> unwrap_conjugations(const MapForm& form) {
  if (const auto* c = form.get_if<ConjugatedForm>()) {
    auto [base, inner] = unwrap_conjugations(*c->base);
    return {base, c->mobius.compose(inner)};
  }
  return {form, MobiusMap::identity()};
}

}  // namespace detail

/// Dynamical plane of a map in H (basins of its two attracting fixed points)
/// or of z + B + 1/z (time to certified escape), possibly conjugated.
inline ImageBuffer raster_dynamical_plane(const RasterJob& job, const MapForm& form, unsigned threads = 0) {
  if (job.mode != RasterMode::Dynamical) throw std::invalid_argument("job mode is not dynamical");
  const auto [base, outer] = detail::unwrap_conjugations(form);
  const MobiusMap to_base = outer.inverse();

  if (const auto* f = base.get_if<LambdaForm>()) {
    if (!(std::abs(f->lambda1) < 1.0) || !(std::abs(f->lambda2) < 1.0)) {
      throw Error(ErrorKind::UnsupportedForm, "lambda form outside H");
    }
    return detail::render_tiles(job, threads, [&](Complex z) -> PixelResult {
      const Fate fate = orbit_fate(base, to_base(SpherePoint::from_complex(z)), job.budget, job.tol);
      if (const auto* a = std::get_if<AttractedToPoint>(&fate)) {
        const bool at_zero = chordal_distance(a->point, SpherePoint::origin()) <
                             chordal_distance(a->point, SpherePoint::infinity());
        return {at_zero ? PixelClass::BasinFirst : PixelClass::BasinSecond, a->steps};
      }
      return {PixelClass::Undetermined, fate_steps(fate)};
    });
  }
  if (base.get_if<PerOneForm>() != nullptr) {
    return detail::render_tiles(job, threads, [&](Complex z) -> PixelResult {
      const Fate fate = orbit_fate(base, to_base(SpherePoint::from_complex(z)), job.budget, job.tol);
      if (const auto* e = std::get_if<EscapesParabolic>(&fate); e != nullptr && e->certified) {
        return {PixelClass::Escaping, e->steps};
      }
      return {PixelClass::NonEscaping, fate_steps(fate)};
    });
  }
  throw Error(ErrorKind::UnsupportedForm, "unsupported base form");
}

/// Conjugates f_{l1, l2} by the Mobius map sending (0, infinity, z3) to
/// (-r, -1/r, 1). For l1 = conj(l2) and r = |l1| this is the representative
/// symmetric about the unit circle with attracting fixed points -r and -1/r.
inline MapForm mobius_conjugate_symmetric(const LambdaForm& form, double r) {
  if (!(r > 0.0) || !(r < 1.0)) throw Error(ErrorKind::InvalidForm, "r must lie in (0, 1)");
  const SpherePoint z3(1.0 - form.lambda1, 1.0 - form.lambda2);
  const SpherePoint src[3] = {SpherePoint::origin(), SpherePoint::infinity(), z3};
  const SpherePoint dst[3] = {SpherePoint::from_complex(-r), SpherePoint::from_complex(-1.0 / r),
                              SpherePoint::from_complex(1.0)};
  const MobiusMap m = mobius_from_three_points(src, dst);
  return MapForm::conjugated(MapForm::lambda(form.lambda1, form.lambda2), m);
}

}  // namespace quadmod
