#pragma once

#include "gbake/cubemap.hpp"
#include "gbake/probe_grid.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gbake {

inline constexpr int kManifestVersion = 1;
inline constexpr const char *kManifestFileName = "probes.json";
/// Positions are written in the scene's own frame; engine-side loaders apply
/// any handedness or axis change.
inline constexpr const char *kCoordinateConvention = "scene-native";
/// Face PNGs hold linear radiance scaled to 8 bits; no transfer curve is applied.
inline constexpr const char *kColorEncoding = "linear";

struct ManifestProbe {
  int id = 0;
  Vec3 position = Vec3::Zero();
  Vec3 influence_extents = Vec3::Zero();
  /// Face image paths relative to the manifest, indexed by Face.
  std::array<std::string, 6> faces;

  friend bool operator==(const ManifestProbe &, const ManifestProbe &) = default;
};

/// On-disk description of a completed bake (probes.json).
struct BakeManifest {
  int version = kManifestVersion;
  std::string coordinate_convention = kCoordinateConvention;
  std::string color_encoding = kColorEncoding;
  ProbeGrid grid;
  int face_resolution = 0;
  std::vector<ManifestProbe> probes;

  friend bool operator==(const BakeManifest &, const BakeManifest &) = default;
};

/// "probe_{id}_{face}.png"
std::string face_file_name(int probe_id, Face face);

/// Manifest content for a grid; face paths follow face_file_name.
BakeManifest make_manifest(const ProbeGrid &grid, int face_res);

/// Writes the six faces of one probe as 8-bit PNGs into `dir`.
void write_probe_faces(const std::filesystem::path &dir, int probe_id, const Cubemap &cubemap);

/// Writes probes.json atomically (temporary file + rename).
void write_manifest(const std::filesystem::path &dir, const BakeManifest &manifest);

/// Exports already baked cubemaps: PNG faces first, manifest last. Any stale
/// manifest in `dir` is removed up front so a failed export leaves none.
BakeManifest export_bake(const ProbeGrid &grid, std::span<const Cubemap> cubemaps,
                         const std::filesystem::path &dir);

/// Reads and validates probes.json. Throws ManifestVersionError,
/// ManifestMissingFaceError (absent key or file), ManifestCountError, or
/// ManifestError for other structural problems.
BakeManifest load_manifest(const std::filesystem::path &path);

std::string manifest_to_json(const BakeManifest &manifest);

struct BakeProgress {
  std::size_t probes_done = 0;
  std::size_t probes_total = 0;
};

/// Bakes every probe of `grid` with `renderer` and streams faces to `dir`,
/// writing the manifest only after every face has landed.
BakeManifest bake_grid(const ProbeGrid &grid, const FaceRenderer &renderer, int face_res,
                       const std::filesystem::path &dir, WorkerPool *pool = nullptr,
                       const std::function<void(const BakeProgress &)> &on_progress = {});

} // namespace gbake
