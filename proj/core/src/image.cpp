#include "gbake/image.hpp"

namespace gbake {

std::vector<std::uint8_t> quantize(const Image &image) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(image.pixels().size() * 3);
  for (const Rgb &p : image.pixels()) {
    for (int c = 0; c < 3; ++c) {
      bytes.push_back(quantize_channel(p[c]));
    }
  }
  return bytes;
}

} // namespace gbake
