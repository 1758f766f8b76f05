#pragma once

#include "gbake/cubemap.hpp"
#include "gbake/ray_tracer.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace gbake {

inline constexpr int kCubeEdgeCount = 12;
inline constexpr int kDefaultEdgeSamples = 256;

/// The 12 pairs of faces that share a cube edge, in a fixed order.
const std::array<std::pair<Face, Face>, kCubeEdgeCount> &cube_edges();

/// Result of re-tracing identical rays through two adjacent face cameras.
struct ExactEdgeResult {
  double max_linear = 0.0;    ///< largest channel difference before quantization
  double max_quantized = 0.0; ///< largest difference after 8-bit quantization, in [0, 1]
  std::size_t rays = 0;       ///< directions checked (per face, so 2 * rays traces)
};

/// For `samples` directions on each of the 12 cube edges, builds the image
/// plane coordinates of the direction on both adjacent faces, traces through
/// each face's parameterization, and reports the largest discrepancy.
ExactEdgeResult exact_edge_check(const RayTracer &tracer, const Vec3 &origin,
                                 int samples = kDefaultEdgeSamples);

struct EdgeStats {
  Face a = Face::px;
  Face b = Face::px;
  double mean = 0.0;          ///< mean |delta| over texel pairs and channels
  double max = 0.0;           ///< largest channel |delta|
  std::size_t samples = 0;    ///< texel pairs
  double interior_mean = 0.0; ///< same statistic one texel step inside each face
};

struct SeamReport {
  std::array<EdgeStats, kCubeEdgeCount> edges;
  double mean = 0.0; ///< over every texel pair of every edge
  double max = 0.0;
};

/// Adjacent-texel seam metric on linear values clamped to [0, 1]. Each boundary
/// texel is paired with the boundary texel of the neighbouring face whose view
/// direction is nearest. Throws DomainError for mismatched face resolutions.
SeamReport adjacent_texel_metric(const Cubemap &cubemap);

struct RendererComparison {
  RendererKind first_kind = RendererKind::splat;
  RendererKind second_kind = RendererKind::raytrace;
  SeamReport first;
  SeamReport second;
  /// first.mean / second.mean per edge; empty when the denominator is zero.
  std::array<std::optional<double>, kCubeEdgeCount> ratio;
  std::optional<double> overall_ratio;
};

/// Bakes the probe with both renderers and compares their seam metrics.
RendererComparison compare_renderers(const FaceRenderer &first, const FaceRenderer &second,
                                     const Vec3 &origin, int face_res,
                                     WorkerPool *pool = nullptr);

/// Everything a seam run produced, ready for serialization.
struct SeamStudy {
  Vec3 origin = Vec3::Zero();
  int face_res = 0;
  std::optional<SeamReport> raytrace;
  std::optional<SeamReport> splat;
  std::optional<ExactEdgeResult> exact;

  /// splat.mean / raytrace.mean for edge `e` (or overall when e < 0); empty if
  /// either report is missing or the denominator is zero.
  std::optional<double> ratio(int e = -1) const;
};

/// Per-edge rows plus the aggregate and the exact-edge section.
std::string seam_study_json(const SeamStudy &study);
/// Flat table: one row per (edge, renderer).
std::string seam_study_csv(const SeamStudy &study);

} // namespace gbake
