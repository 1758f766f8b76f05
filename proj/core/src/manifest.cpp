#include "gbake/manifest.hpp"

#include "gbake/error.hpp"
#include "gbake/png_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <system_error>

namespace gbake {

using nlohmann::json;

namespace {

json vec_to_json(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3) {
    throw ManifestError("manifest field '" + what + "' must be an array of 3 numbers");
  }
  Vec3 v;
  for (int a = 0; a < 3; ++a) {
    if (!j[a].is_number()) {
      throw ManifestError("manifest field '" + what + "' must be an array of 3 numbers");
    }
    v[a] = j[a].get<double>();
  }
  return v;
}

const json &field(const json &j, const char *key, const std::string &where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ManifestError("manifest " + where + " is missing '" + key + "'");
  }
  return j.at(key);
}

} // namespace

std::string face_file_name(int probe_id, Face face) {
  return "probe_" + std::to_string(probe_id) + "_" + std::string(face_key(face)) + ".png";
}

BakeManifest make_manifest(const ProbeGrid &grid, int face_res) {
  if (face_res < 1) {
    throw DomainError("face resolution must be at least 1");
  }
  BakeManifest manifest;
  manifest.grid = grid;
  manifest.face_resolution = face_res;
  for (const Probe &probe : make_probes(grid)) {
    ManifestProbe entry{probe.id, probe.position, probe.influence_extents, {}};
    for (Face f : kAllFaces) {
      entry.faces[static_cast<int>(f)] = face_file_name(probe.id, f);
    }
    manifest.probes.push_back(std::move(entry));
  }
  return manifest;
}

void write_probe_faces(const std::filesystem::path &dir, int probe_id, const Cubemap &cubemap) {
  cubemap.validate();
  for (Face f : kAllFaces) {
    write_png(dir / face_file_name(probe_id, f), cubemap.face(f));
  }
}

std::string manifest_to_json(const BakeManifest &manifest) {
  json probes = json::array();
  for (const auto &p : manifest.probes) {
    json faces = json::object();
    for (Face f : kAllFaces) {
      faces[std::string(face_key(f))] = p.faces[static_cast<int>(f)];
    }
    probes.push_back({{"id", p.id},
                      {"position", vec_to_json(p.position)},
                      {"influence_extents", vec_to_json(p.influence_extents)},
                      {"faces", faces}});
  }
  const auto &g = manifest.grid;
  json doc = {
      {"version", manifest.version},
      {"coordinate_convention", manifest.coordinate_convention},
      {"color_encoding", manifest.color_encoding},
      {"grid",
       {{"bbox_min", vec_to_json(g.bbox_min)},
        {"bbox_max", vec_to_json(g.bbox_max)},
        {"resolution", json::array({g.resolution[0], g.resolution[1], g.resolution[2]})},
        {"overlap", g.overlap}}},
      {"face_resolution", manifest.face_resolution},
      {"probes", probes},
  };
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path &dir, const BakeManifest &manifest) {
  const auto final_path = dir / kManifestFileName;
  const auto temp_path = dir / (std::string(kManifestFileName) + ".tmp");
  {
    std::ofstream out(temp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write manifest", temp_path.string());
    }
    out << manifest_to_json(manifest);
    if (!out) {
      throw IoError("failed writing manifest", temp_path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp_path, final_path, ec);
  if (ec) {
    throw IoError("cannot move manifest into place (" + ec.message() + ")", final_path.string());
  }
}

namespace {

void prepare_output_dir(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory (" + ec.message() + ")", dir.string());
  }
  std::filesystem::remove(dir / kManifestFileName, ec);
  if (ec) {
    throw IoError("cannot remove stale manifest (" + ec.message() + ")",
                  (dir / kManifestFileName).string());
  }
}

} // namespace

BakeManifest export_bake(const ProbeGrid &grid, std::span<const Cubemap> cubemaps,
                         const std::filesystem::path &dir) {
  grid.validate();
  if (cubemaps.size() != grid.probe_count()) {
    throw DomainError("export needs one cubemap per probe: got " +
                      std::to_string(cubemaps.size()) + ", grid has " +
                      std::to_string(grid.probe_count()));
  }
  if (cubemaps.empty()) {
    throw DomainError("nothing to export");
  }
  const int face_res = cubemaps.front().face_res();
  for (const auto &c : cubemaps) {
    if (c.face_res() != face_res) {
      throw DomainError("all cubemaps of one bake must share a face resolution");
    }
  }
  BakeManifest manifest = make_manifest(grid, face_res);
  prepare_output_dir(dir);
  for (std::size_t i = 0; i < cubemaps.size(); ++i) {
    write_probe_faces(dir, manifest.probes[i].id, cubemaps[i]);
  }
  write_manifest(dir, manifest);
  return manifest;
}

BakeManifest bake_grid(const ProbeGrid &grid, const FaceRenderer &renderer, int face_res,
                       const std::filesystem::path &dir, WorkerPool *pool,
                       const std::function<void(const BakeProgress &)> &on_progress) {
  BakeManifest manifest = make_manifest(grid, face_res);
  prepare_output_dir(dir);
  BakeProgress progress{0, manifest.probes.size()};
  for (const ManifestProbe &probe : manifest.probes) {
    const Cubemap cubemap = bake_probe(probe.position, renderer, face_res, pool);
    write_probe_faces(dir, probe.id, cubemap);
    ++progress.probes_done;
    if (on_progress) {
      on_progress(progress);
    }
  }
  write_manifest(dir, manifest);
  return manifest;
}

BakeManifest load_manifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open manifest", path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ManifestError("manifest is not valid JSON: " + std::string(e.what()));
  }

  BakeManifest m;
  try {
    const json &version = field(doc, "version", "root");
    if (!version.is_number_integer() || version.get<int>() != kManifestVersion) {
      throw ManifestVersionError("unsupported manifest version " + version.dump() +
                                 " (expected " + std::to_string(kManifestVersion) + ")");
    }
    m.version = version.get<int>();
    m.coordinate_convention = field(doc, "coordinate_convention", "root").get<std::string>();
    m.color_encoding = field(doc, "color_encoding", "root").get<std::string>();
    const json &grid = field(doc, "grid", "root");
    m.grid.bbox_min = vec_from_json(field(grid, "bbox_min", "grid"), "grid.bbox_min");
    m.grid.bbox_max = vec_from_json(field(grid, "bbox_max", "grid"), "grid.bbox_max");
    const json &res = field(grid, "resolution", "grid");
    if (!res.is_array() || res.size() != 3) {
      throw ManifestError("manifest grid.resolution must be an array of 3 integers");
    }
    for (int a = 0; a < 3; ++a) {
      m.grid.resolution[a] = res[a].get<int>();
    }
    m.grid.overlap = field(grid, "overlap", "grid").get<double>();
    m.face_resolution = field(doc, "face_resolution", "root").get<int>();
    if (m.face_resolution < 1) {
      throw ManifestError("manifest face_resolution must be positive");
    }
    try {
      m.grid.validate();
    } catch (const DomainError &e) {
      throw ManifestError(std::string("manifest grid is invalid: ") + e.what());
    }

    const json &probes = field(doc, "probes", "root");
    if (!probes.is_array()) {
      throw ManifestError("manifest 'probes' must be an array");
    }
    if (probes.size() != m.grid.probe_count()) {
      throw ManifestCountError("manifest lists " + std::to_string(probes.size()) +
                               " probes but the grid defines " +
                               std::to_string(m.grid.probe_count()));
    }
    const auto base = path.parent_path();
    for (const json &p : probes) {
      ManifestProbe probe;
      probe.id = field(p, "id", "probe").get<int>();
      const std::string where = "probe " + std::to_string(probe.id);
      probe.position = vec_from_json(field(p, "position", where), where + ".position");
      probe.influence_extents =
          vec_from_json(field(p, "influence_extents", where), where + ".influence_extents");
      const json &faces = field(p, "faces", where);
      for (Face f : kAllFaces) {
        const std::string key(face_key(f));
        if (!faces.is_object() || !faces.contains(key) || !faces.at(key).is_string()) {
          throw ManifestMissingFaceError(where + " has no '" + key + "' face path");
        }
        const std::string rel = faces.at(key).get<std::string>();
        if (!std::filesystem::is_regular_file(base / rel)) {
          throw ManifestMissingFaceError(where + " face '" + key +
                                         "' file does not exist: " + (base / rel).string());
        }
        probe.faces[static_cast<int>(f)] = rel;
      }
      m.probes.push_back(std::move(probe));
    }
  } catch (const json::exception &e) {
    throw ManifestError("malformed manifest: " + std::string(e.what()));
  }
  return m;
}

} // namespace gbake
