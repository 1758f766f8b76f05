#include "cli.hpp"

#include "gbake/cubemap.hpp"
#include "gbake/error.hpp"
#include "gbake/manifest.hpp"
#include "gbake/ply_io.hpp"
#include "gbake/png_io.hpp"
#include "gbake/renderer.hpp"
#include "gbake/seam_metrics.hpp"
#include "gbake/synthetic.hpp"
#include "gbake/worker_pool.hpp"

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace gbake::cli {

namespace {

/// Bad flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Vec3 parse_triple(const std::string &text, const std::string &flag) {
  std::array<double, 3> v{};
  std::istringstream in(text);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    if (n >= 3) {
      throw UsageError(flag + " expects three comma-separated numbers, got '" + text + "'");
    }
    try {
      std::size_t used = 0;
      v[n] = std::stod(item, &used);
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception &) {
      throw UsageError(flag + " expects three comma-separated numbers, got '" + text + "'");
    }
    ++n;
  }
  if (n != 3) {
    throw UsageError(flag + " expects three comma-separated numbers, got '" + text + "'");
  }
  return Vec3(v[0], v[1], v[2]);
}

std::array<int, 3> parse_int_triple(const std::string &text, const std::string &flag) {
  const Vec3 v = parse_triple(text, flag);
  std::array<int, 3> out{};
  for (int a = 0; a < 3; ++a) {
    if (v[a] != std::floor(v[a]) || v[a] < 1 || v[a] > 1e6) {
      throw UsageError(flag + " expects three positive integers, got '" + text + "'");
    }
    out[a] = static_cast<int>(v[a]);
  }
  return out;
}

RendererKind renderer_flag(const std::string &name) {
  try {
    return parse_renderer(name);
  } catch (const DomainError &e) {
    throw UsageError(e.what());
  }
}

std::string format_vec(const Vec3 &v) {
  std::ostringstream s;
  s << std::setprecision(9) << v.x() << ',' << v.y() << ',' << v.z();
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::unique_ptr<FaceRenderer> make_renderer(RendererKind kind, const GaussianScene &scene,
                                            const Rgb &background, double dilation) {
  if (kind == RendererKind::raytrace) {
    RenderSettings settings;
    settings.background = background;
    return std::make_unique<RayTraceRenderer>(scene, settings);
  }
  SplatSettings settings;
  settings.background = background;
  settings.dilation = dilation;
  return std::make_unique<SplatRenderer>(scene, settings);
}

// -- bake ---------------------------------------------------------------------

struct BakeOptions {
  std::string scene;
  std::string bbox_min = "-1,-1,-1";
  std::string bbox_max = "1,1,1";
  std::string grid = "5,5,5";
  int face_res = 800;
  std::string renderer = "raytrace";
  double overlap = kDefaultOverlap;
  std::string background = "0,0,0";
  std::string out = "bake";
  std::size_t workers = 0;
};

int cmd_bake(const BakeOptions &opt, std::ostream &out) {
  ProbeGrid grid;
  grid.bbox_min = parse_triple(opt.bbox_min, "--bbox-min");
  grid.bbox_max = parse_triple(opt.bbox_max, "--bbox-max");
  grid.resolution = parse_int_triple(opt.grid, "--grid");
  grid.overlap = opt.overlap;
  const Rgb background = parse_triple(opt.background, "--background");
  const RendererKind kind = renderer_flag(opt.renderer);
  if (opt.face_res < 1) {
    throw UsageError("--face-res must be at least 1");
  }
  grid.validate();

  const GaussianScene scene = load_ply(opt.scene);
  WorkerPool pool(resolve_worker_count(opt.workers));
  const auto start = std::chrono::steady_clock::now();
  const auto renderer = make_renderer(kind, scene, background, SplatSettings{}.dilation);
  const BakeManifest baked = bake_grid(grid, *renderer, opt.face_res, opt.out, &pool);
  const double elapsed = seconds_since(start);

  const BakeManifest loaded = load_manifest(std::filesystem::path(opt.out) / kManifestFileName);
  if (!(loaded == baked)) {
    throw ManifestError("manifest read back from disk differs from the bake");
  }

  out << "renderer: " << renderer_name(kind) << '\n';
  out << "gaussians: " << scene.size() << '\n';
  out << "probes: " << baked.probes.size() << '\n';
  out << "faces: " << 6 * baked.probes.size() << '\n';
  out << "face_resolution: " << opt.face_res << '\n';
  out << "workers: " << pool.size() << '\n';
  out << "seconds: " << std::fixed << std::setprecision(3) << elapsed << '\n';
  out << "manifest: " << (std::filesystem::path(opt.out) / kManifestFileName).string() << '\n';
  return kExitOk;
}

// -- render -------------------------------------------------------------------

struct RenderOptions {
  std::string scene;
  std::string origin = "0,0,0";
  std::string face;
  std::string right, up, forward;
  int face_res = 800;
  std::string renderer = "raytrace";
  std::string background = "0,0,0";
  std::string out = "view.png";
  std::size_t workers = 0;
};

int cmd_render(const RenderOptions &opt, std::ostream &out) {
  Camera camera;
  camera.origin = parse_triple(opt.origin, "--origin");
  const bool explicit_basis = !opt.right.empty() || !opt.up.empty() || !opt.forward.empty();
  if (explicit_basis == !opt.face.empty()) {
    throw UsageError("give either --face or all of --right/--up/--forward");
  }
  if (explicit_basis) {
    if (opt.right.empty() || opt.up.empty() || opt.forward.empty()) {
      throw UsageError("an explicit basis needs --right, --up and --forward");
    }
    camera.basis = {parse_triple(opt.right, "--right"), parse_triple(opt.up, "--up"),
                    parse_triple(opt.forward, "--forward")};
    try {
      check_orthonormal(camera.basis, 1e-6);
    } catch (const DomainError &e) {
      throw UsageError(e.what());
    }
  } else {
    try {
      camera.basis = face_basis(parse_face(opt.face));
    } catch (const DomainError &e) {
      throw UsageError(e.what());
    }
  }
  if (opt.face_res < 1) {
    throw UsageError("--face-res must be at least 1");
  }
  const RendererKind kind = renderer_flag(opt.renderer);
  const Rgb background = parse_triple(opt.background, "--background");

  const GaussianScene scene = load_ply(opt.scene);
  WorkerPool pool(resolve_worker_count(opt.workers));
  const auto start = std::chrono::steady_clock::now();
  const auto renderer = make_renderer(kind, scene, background, SplatSettings{}.dilation);
  const Image image = renderer->render(camera, opt.face_res, &pool);
  const double elapsed = seconds_since(start);
  write_png(opt.out, image);

  out << "renderer: " << renderer_name(kind) << '\n';
  out << "resolution: " << opt.face_res << 'x' << opt.face_res << '\n';
  out << "seconds: " << std::fixed << std::setprecision(3) << elapsed << '\n';
  out << "output: " << opt.out << '\n';
  return kExitOk;
}

// -- seams --------------------------------------------------------------------

struct SeamOptions {
  std::string scene;
  std::string probe = "0,0,0";
  int face_res = 128;
  std::string renderer = "both";
  int samples = kDefaultEdgeSamples;
  double dilation = SplatSettings{}.dilation;
  std::string out = "seams";
  std::size_t workers = 0;
};

int cmd_seams(const SeamOptions &opt, std::ostream &out) {
  const Vec3 origin = parse_triple(opt.probe, "--probe");
  if (opt.face_res < 1) {
    throw UsageError("--face-res must be at least 1");
  }
  if (opt.renderer != "both" && opt.renderer != "raytrace" && opt.renderer != "splat") {
    throw UsageError("--renderer must be both, raytrace or splat");
  }
  const bool want_ray = opt.renderer != "splat";
  const bool want_splat = opt.renderer != "raytrace";

  // An empty scene is a valid (all-zero) seam study.
  GaussianScene scene;
  try {
    scene = load_ply(opt.scene);
  } catch (const EmptySceneError &) {
  }
  WorkerPool pool(resolve_worker_count(opt.workers));

  SeamStudy study;
  study.origin = origin;
  study.face_res = opt.face_res;
  if (want_ray) {
    const RayTraceRenderer ray(scene);
    study.raytrace = adjacent_texel_metric(bake_probe(origin, ray, opt.face_res, &pool));
    study.exact = exact_edge_check(ray.tracer(), origin, opt.samples);
  }
  if (want_splat) {
    SplatSettings settings;
    settings.dilation = opt.dilation;
    const SplatRenderer splat(scene, settings);
    study.splat = adjacent_texel_metric(bake_probe(origin, splat, opt.face_res, &pool));
  }

  const std::filesystem::path dir(opt.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory", dir.string());
  }
  for (const auto &[name, text] :
       {std::pair{"seams.json", seam_study_json(study)}, std::pair{"seams.csv", seam_study_csv(study)}}) {
    std::ofstream file(dir / name, std::ios::binary);
    file << text;
    if (!file) {
      throw IoError("failed writing seam report", (dir / name).string());
    }
  }

  out << std::setprecision(6);
  out << "probe: " << format_vec(origin) << "  face_resolution: " << opt.face_res << '\n';
  out << std::left << std::setw(8) << "edge" << std::setw(14) << "raytrace" << std::setw(14)
      << "splat" << "ratio\n";
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    const auto [fa, fb] = cube_edges()[e];
    out << std::setw(8) << (std::string(face_key(fa)) + "/" + std::string(face_key(fb)));
    out << std::setw(14) << (study.raytrace ? std::to_string(study.raytrace->edges[e].mean) : "-");
    out << std::setw(14) << (study.splat ? std::to_string(study.splat->edges[e].mean) : "-");
    const auto r = study.ratio(e);
    out << (r ? std::to_string(*r) : "n/a") << '\n';
  }
  const auto overall = study.ratio();
  out << "overall ratio (splat/raytrace): " << (overall ? std::to_string(*overall) : "n/a")
      << '\n';
  if (study.exact) {
    out << "exact edge check: max_linear=" << study.exact->max_linear
        << " max_quantized=" << study.exact->max_quantized << " rays=" << study.exact->rays
        << '\n';
  }
  out << "report: " << (dir / "seams.json").string() << ", " << (dir / "seams.csv").string()
      << '\n';
  return kExitOk;
}

// -- info ---------------------------------------------------------------------

int cmd_info(const std::string &path, std::ostream &out) {
  const GaussianScene scene = load_ply(path);
  out << "particles: " << scene.size() << '\n';
  out << "culled_below_opacity_floor: " << scene.culled_on_load() << '\n';
  out << "sh_degree: " << scene.sh_degree() << '\n';
  out << "bounds_min: " << format_vec(scene.world_aabb().lo) << '\n';
  out << "bounds_max: " << format_vec(scene.world_aabb().hi) << '\n';

  constexpr int kBins = 10;
  std::array<std::size_t, kBins> histogram{};
  for (const auto &p : scene.particles()) {
    const int bin = std::min(kBins - 1, static_cast<int>(p.opacity * kBins));
    ++histogram[bin];
  }
  out << "opacity_histogram:\n";
  for (int b = 0; b < kBins; ++b) {
    out << "  [" << std::fixed << std::setprecision(1) << b / double(kBins) << ", "
        << (b + 1) / double(kBins) << (b + 1 == kBins ? "]" : ")") << ": " << histogram[b]
        << '\n';
  }
  return kExitOk;
}

// -- gen ----------------------------------------------------------------------

struct GenOptions {
  std::string kind = "room";
  std::size_t count = 0;
  std::uint64_t seed = 1;
  std::string out = "scene.ply";
};

int cmd_gen(const GenOptions &opt, std::ostream &out) {
  synthetic::SceneKind kind;
  try {
    kind = synthetic::parse_scene_kind(opt.kind);
  } catch (const DomainError &e) {
    throw UsageError(e.what());
  }
  const std::size_t count = opt.count == 0 ? synthetic::default_count(kind) : opt.count;
  const auto particles = synthetic::generate(kind, count, opt.seed);
  save_ply(opt.out, particles, synthetic::scene_kind_sh_degree(kind));
  out << "kind: " << opt.kind << '\n';
  out << "particles: " << particles.size() << '\n';
  out << "seed: " << opt.seed << '\n';
  out << "output: " << opt.out << '\n';
  return kExitOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bake Gaussian-splat scenes into cubemap reflection probes"};
  app.require_subcommand(1);

  BakeOptions bake;
  auto *bake_cmd = app.add_subcommand("bake", "Bake a probe grid to PNG faces and probes.json");
  bake_cmd->add_option("--scene", bake.scene, "3DGS PLY file")->required();
  bake_cmd->add_option("--bbox-min", bake.bbox_min, "Grid box minimum corner x,y,z")
      ->capture_default_str();
  bake_cmd->add_option("--bbox-max", bake.bbox_max, "Grid box maximum corner x,y,z")
      ->capture_default_str();
  bake_cmd->add_option("--grid", bake.grid, "Probe counts nx,ny,nz")->capture_default_str();
  bake_cmd->add_option("--face-res", bake.face_res, "Cubemap face resolution in pixels")
      ->capture_default_str();
  bake_cmd->add_option("--renderer", bake.renderer, "raytrace or splat")->capture_default_str();
  bake_cmd->add_option("--overlap", bake.overlap, "Influence overlap as a fraction of cell size")
      ->capture_default_str();
  bake_cmd->add_option("--background", bake.background, "Background radiance r,g,b")
      ->capture_default_str();
  bake_cmd->add_option("--out", bake.out, "Output directory")->capture_default_str();
  bake_cmd->add_option("--workers", bake.workers,
                       "Worker threads (0: GBAKE_WORKERS or all cores)");

  RenderOptions render;
  auto *render_cmd = app.add_subcommand("render", "Render a single pi/2 view to PNG");
  render_cmd->add_option("--scene", render.scene, "3DGS PLY file")->required();
  render_cmd->add_option("--origin", render.origin, "Camera origin x,y,z")->capture_default_str();
  render_cmd->add_option("--face", render.face, "Cube face key: px, nx, py, ny, pz, nz");
  render_cmd->add_option("--right", render.right, "Explicit basis: right vector");
  render_cmd->add_option("--up", render.up, "Explicit basis: up vector");
  render_cmd->add_option("--forward", render.forward, "Explicit basis: forward vector");
  render_cmd->add_option("--face-res", render.face_res, "Resolution in pixels")
      ->capture_default_str();
  render_cmd->add_option("--renderer", render.renderer, "raytrace or splat")
      ->capture_default_str();
  render_cmd->add_option("--background", render.background, "Background radiance r,g,b")
      ->capture_default_str();
  render_cmd->add_option("--out", render.out, "Output PNG")->capture_default_str();
  render_cmd->add_option("--workers", render.workers, "Worker threads");

  SeamOptions seams;
  auto *seams_cmd = app.add_subcommand("seams", "Measure cubemap seam discontinuities");
  seams_cmd->add_option("--scene", seams.scene, "3DGS PLY file")->required();
  seams_cmd->add_option("--probe", seams.probe, "Probe position x,y,z")->capture_default_str();
  seams_cmd->add_option("--face-res", seams.face_res, "Face resolution")->capture_default_str();
  seams_cmd->add_option("--renderer", seams.renderer, "both, raytrace or splat")
      ->capture_default_str();
  seams_cmd->add_option("--samples", seams.samples, "Directions per edge for the exact check")
      ->capture_default_str();
  seams_cmd->add_option("--dilation", seams.dilation, "Splat low-pass dilation in pixels^2")
      ->capture_default_str();
  seams_cmd->add_option("--out", seams.out, "Report directory")->capture_default_str();
  seams_cmd->add_option("--workers", seams.workers, "Worker threads");

  std::string info_path;
  auto *info_cmd = app.add_subcommand("info", "Print scene statistics");
  info_cmd->add_option("scene", info_path, "3DGS PLY file")->required();

  GenOptions gen;
  auto *gen_cmd = app.add_subcommand("gen", "Write a seeded synthetic scene as PLY");
  gen_cmd->add_option("--kind", gen.kind, "random, room, seam or smooth")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of particles (0: 200 for seam, else 10000)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output PLY")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bake_cmd) {
      return cmd_bake(bake, out);
    }
    if (*render_cmd) {
      return cmd_render(render, out);
    }
    if (*seams_cmd) {
      return cmd_seams(seams, out);
    }
    if (*info_cmd) {
      return cmd_info(info_path, out);
    }
    if (*gen_cmd) {
      return cmd_gen(gen, out);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace gbake::cli
