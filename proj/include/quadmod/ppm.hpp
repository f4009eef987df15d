#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadmod/raster.hpp"

namespace quadmod {

/// Binary PPM: "P6\n{w} {h}\n255\n" followed by the row-major RGB bytes.
inline std::vector<std::uint8_t> encode_ppm(const ImageBuffer& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

}  // namespace quadmod
