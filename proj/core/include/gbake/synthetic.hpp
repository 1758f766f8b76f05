#pragma once

#include "gbake/gaussian_scene.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace gbake::synthetic {

/// Seeded scene generators for tests, benchmarks, and offline acceptance runs.
enum class SceneKind {
  /// Particles scattered uniformly through [-2, 2]^3 with random anisotropy,
  /// rotation, opacity, and degree-3 SH.
  random,
  /// Thin textured walls of the box [-2, 2]^3 plus sparse clutter between the
  /// walls and [-1.2, 1.2]^3; leaves the central region empty for probes.
  room,
  /// Large, strongly anisotropic particles centred near the planes through
  /// the origin and each cube edge, at least 20 degrees off both adjacent
  /// face axes. Stresses cubemap seams.
  seam,
  /// Broad overlapping blobs on a sphere of radius 3 with colors varying
  /// smoothly with direction.
  smooth,
};

std::string_view scene_kind_name(SceneKind kind);
/// Throws DomainError for unknown names.
SceneKind parse_scene_kind(std::string_view name);

/// SH degree each generator emits.
int scene_kind_sh_degree(SceneKind kind);

/// 200 for the seam scene, 10000 otherwise.
std::size_t default_count(SceneKind kind);

std::vector<GaussianParticle> generate(SceneKind kind, std::size_t count, std::uint64_t seed);

inline GaussianScene make_scene(SceneKind kind, std::size_t count, std::uint64_t seed) {
  return GaussianScene(generate(kind, count, seed), scene_kind_sh_degree(kind));
}

/// SH DC coefficient that yields `value` for a degree-0 particle.
inline float dc_for_color(double value) {
  return static_cast<float>((value - 0.5) / kShY00);
}

} // namespace gbake::synthetic
