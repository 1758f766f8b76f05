#pragma once

#include "gbake/types.hpp"

#include <array>

namespace gbake {

inline constexpr int kShCoeffsPerChannel = 16;
inline constexpr int kMaxShDegree = 3;

/// Degree-0 real SH basis constant, 1 / (2 sqrt(pi)).
inline constexpr double kShY00 = 0.28209479177387814;

/// Per-channel SH coefficients, channel-major: coeffs[c * 16 + k] with k the
/// basis index (0 = degree 0, 1..3 = degree 1, 4..8 = degree 2, 9..15 = degree 3).
/// Degrees below 3 leave the tail zero.
using ShCoeffs = std::array<float, 3 * kShCoeffsPerChannel>;

/// Number of coefficients per channel used by an SH degree: (degree + 1)^2.
constexpr int sh_basis_count(int degree) { return (degree + 1) * (degree + 1); }

/// Evaluates the 16 real SH basis functions in the sign convention used by
/// 3DGS checkpoints. `dir` must be unit length.
std::array<double, kShCoeffsPerChannel> sh_basis(const Vec3 &dir);

/// View-dependent color: max(0, 0.5 + sum_k c_k Y_k(dir)) per channel.
Rgb sh_color(const ShCoeffs &coeffs, const Vec3 &dir);

} // namespace gbake
