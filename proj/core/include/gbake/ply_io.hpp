#pragma once

#include "gbake/gaussian_scene.hpp"

#include <filesystem>
#include <span>

namespace gbake {

/// Opacity floor applied at load; particles below it never reach an 8-bit pixel.
inline constexpr double kLoadOpacityFloor = 1.0 / 255.0;

/// Reads a binary little-endian 3DGS PLY (Inria vertex layout).
///
/// Raw parameters are activated on the way in: opacity = logistic(raw),
/// scale = exp(raw), rotation normalized. Particles whose activated opacity is
/// below kLoadOpacityFloor are dropped and counted in culled_on_load(). The SH
/// degree is inferred from the number of f_rest_* properties (0, 9, 24 or 45).
///
/// Throws FormatError (bad header, missing property), DataError (non-finite
/// value, with vertex index) and EmptySceneError (nothing left after culling).
GaussianScene load_ply(const std::filesystem::path &path);

/// Writes particles in the same layout, inverting the activations. Used by the
/// synthetic scene generator and by tests.
void save_ply(const std::filesystem::path &path, std::span<const GaussianParticle> particles,
              int sh_degree);

} // namespace gbake
