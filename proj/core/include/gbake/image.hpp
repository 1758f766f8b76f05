#pragma once

#include "gbake/types.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace gbake {

/// Row-major linear RGB buffer; row 0 is the top of the image.
class Image {
public:
  Image() = default;
  Image(int width, int height, const Rgb &fill = Rgb::Zero())
      : width_(width), height_(height),
        pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb &at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb &at(int x, int y) const { return pixels_[index(x, y)]; }

  const std::vector<Rgb> &pixels() const { return pixels_; }

  friend bool operator==(const Image &a, const Image &b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
  }

private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

/// Linear value to 8 bits: scaled by 255, rounded half-up, clamped. NaN maps to 0.
inline std::uint8_t quantize_channel(double v) {
  if (!(v > 0.0)) {
    return 0;
  }
  const double scaled = std::floor(v * 255.0 + 0.5);
  return scaled >= 255.0 ? std::uint8_t{255} : static_cast<std::uint8_t>(scaled);
}

/// Interleaved RGB8 bytes of an image, row-major.
std::vector<std::uint8_t> quantize(const Image &image);

} // namespace gbake
