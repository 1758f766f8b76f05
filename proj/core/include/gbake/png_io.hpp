#pragma once

#include "gbake/image.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace gbake {

/// 8-bit RGB pixels as stored on disk.
struct Rgb8Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bytes; ///< interleaved RGB, row-major

  friend bool operator==(const Rgb8Image &, const Rgb8Image &) = default;
};

/// Writes an 8-bit RGB PNG (no alpha, no interlacing, no gamma chunk).
void write_png(const std::filesystem::path &path, const Rgb8Image &image);

/// Quantizes linear values (x 255, round half up, clamp) and writes the PNG.
void write_png(const std::filesystem::path &path, const Image &image);

/// Reads 8-bit RGB PNGs; throws IoError or FormatError otherwise.
Rgb8Image read_png(const std::filesystem::path &path);

} // namespace gbake
