#include "gbake/seam_metrics.hpp"

#include "gbake/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

namespace gbake {

const std::array<std::pair<Face, Face>, kCubeEdgeCount> &cube_edges() {
  static const auto edges = [] {
    std::array<std::pair<Face, Face>, kCubeEdgeCount> out{};
    int n = 0;
    for (std::size_t a = 0; a < kAllFaces.size(); ++a) {
      for (std::size_t b = a + 1; b < kAllFaces.size(); ++b) {
        const Vec3 fa = face_basis(kAllFaces[a]).forward;
        const Vec3 fb = face_basis(kAllFaces[b]).forward;
        if (fa.dot(fb) == 0.0) {
          out[n++] = {kAllFaces[a], kAllFaces[b]};
        }
      }
    }
    return out;
  }();
  return edges;
}

ExactEdgeResult exact_edge_check(const RayTracer &tracer, const Vec3 &origin, int samples) {
  if (samples < 1) {
    throw DomainError("edge sample count must be positive");
  }
  ExactEdgeResult result;
  std::vector<HitRecord> scratch;
  for (const auto &[fa, fb] : cube_edges()) {
    const CameraBasis ba = face_basis(fa);
    const CameraBasis bb = face_basis(fb);
    const Vec3 along = ba.forward.cross(bb.forward);
    for (int k = 0; k < samples; ++k) {
      const double s = -1.0 + 2.0 * (k + 0.5) / samples;
      // On the edge the direction has unit components along both forwards, so
      // each face sees it at image-plane coordinate +/-1 on one axis.
      const Vec3 edge_dir = ba.forward + bb.forward + s * along;
      const Vec3 dir_a = camera_direction(ba, edge_dir.dot(ba.right), edge_dir.dot(ba.up));
      const Vec3 dir_b = camera_direction(bb, edge_dir.dot(bb.right), edge_dir.dot(bb.up));
      const Rgb ca = tracer.trace(Ray{origin, dir_a, kDefaultRayTMin}, scratch).color;
      const Rgb cb = tracer.trace(Ray{origin, dir_b, kDefaultRayTMin}, scratch).color;
      for (int c = 0; c < 3; ++c) {
        result.max_linear = std::max(result.max_linear, std::abs(ca[c] - cb[c]));
        const int qa = quantize_channel(ca[c]);
        const int qb = quantize_channel(cb[c]);
        result.max_quantized = std::max(result.max_quantized, std::abs(qa - qb) / 255.0);
      }
      ++result.rays;
    }
  }
  return result;
}

namespace {

struct Boundary {
  std::vector<std::pair<int, int>> texels;
  int step_i = 0;
  int step_j = 0;
};

/// Texels of `face` lying along its edge toward `toward` (a neighbour's forward axis).
Boundary boundary_toward(Face face, const Vec3 &toward, int face_res) {
  const CameraBasis basis = face_basis(face);
  const double along_right = toward.dot(basis.right);
  const double along_up = toward.dot(basis.up);
  Boundary b;
  for (int t = 0; t < face_res; ++t) {
    if (along_right > 0.5) {
      b.texels.emplace_back(face_res - 1, t);
    } else if (along_right < -0.5) {
      b.texels.emplace_back(0, t);
    } else if (along_up > 0.5) {
      b.texels.emplace_back(t, 0);
    } else {
      b.texels.emplace_back(t, face_res - 1);
    }
  }
  if (along_right > 0.5) {
    b.step_i = -1;
  } else if (along_right < -0.5) {
    b.step_i = 1;
  } else if (along_up > 0.5) {
    b.step_j = 1;
  } else {
    b.step_j = -1;
  }
  return b;
}

Rgb clamp01(const Rgb &c) { return c.cwiseMax(0.0).cwiseMin(1.0); }

} // namespace

SeamReport adjacent_texel_metric(const Cubemap &cubemap) {
  cubemap.validate();
  const int face_res = cubemap.face_res();
  SeamReport report;
  double total_sum = 0.0;
  std::size_t total_pairs = 0;

  for (int e = 0; e < kCubeEdgeCount; ++e) {
    const auto [fa, fb] = cube_edges()[e];
    const Camera cam_a = face_camera(Vec3::Zero(), fa);
    const Camera cam_b = face_camera(Vec3::Zero(), fb);
    const Boundary side_a = boundary_toward(fa, cam_b.basis.forward, face_res);
    const Boundary side_b = boundary_toward(fb, cam_a.basis.forward, face_res);

    std::vector<Vec3> dirs_b;
    dirs_b.reserve(side_b.texels.size());
    for (const auto &[i, j] : side_b.texels) {
      dirs_b.push_back(pixel_direction(cam_b, face_res, i, j));
    }

    const Image &img_a = cubemap.face(fa);
    const Image &img_b = cubemap.face(fb);
    EdgeStats stats{fa, fb, 0.0, 0.0, 0, 0.0};
    double sum = 0.0;
    double interior_sum = 0.0;
    std::size_t interior_terms = 0;
    for (const auto &[ia, ja] : side_a.texels) {
      const Vec3 dir_a = pixel_direction(cam_a, face_res, ia, ja);
      std::size_t best = 0;
      double best_dot = -2.0;
      for (std::size_t k = 0; k < dirs_b.size(); ++k) {
        const double d = dir_a.dot(dirs_b[k]);
        if (d > best_dot) {
          best_dot = d;
          best = k;
        }
      }
      const auto [ib, jb] = side_b.texels[best];
      const Rgb ca = clamp01(img_a.at(ia, ja));
      const Rgb cb = clamp01(img_b.at(ib, jb));
      const Rgb delta = (ca - cb).cwiseAbs();
      sum += delta.sum();
      stats.max = std::max(stats.max, delta.maxCoeff());
      ++stats.samples;

      if (face_res >= 2) {
        const Rgb inner_a = clamp01(img_a.at(ia + side_a.step_i, ja + side_a.step_j));
        const Rgb inner_b = clamp01(img_b.at(ib + side_b.step_i, jb + side_b.step_j));
        interior_sum += (ca - inner_a).cwiseAbs().sum() + (cb - inner_b).cwiseAbs().sum();
        interior_terms += 2;
      }
    }
    stats.mean = sum / (3.0 * static_cast<double>(stats.samples));
    stats.interior_mean =
        interior_terms > 0 ? interior_sum / (3.0 * static_cast<double>(interior_terms)) : 0.0;
    report.edges[e] = stats;
    report.max = std::max(report.max, stats.max);
    total_sum += sum;
    total_pairs += stats.samples;
  }
  report.mean = total_sum / (3.0 * static_cast<double>(total_pairs));
  return report;
}

namespace {

std::optional<double> safe_ratio(double num, double den) {
  if (!(den > 0.0)) {
    return std::nullopt;
  }
  return num / den;
}

} // namespace

RendererComparison compare_renderers(const FaceRenderer &first, const FaceRenderer &second,
                                     const Vec3 &origin, int face_res, WorkerPool *pool) {
  RendererComparison cmp;
  cmp.first_kind = first.kind();
  cmp.second_kind = second.kind();
  cmp.first = adjacent_texel_metric(bake_probe(origin, first, face_res, pool));
  cmp.second = adjacent_texel_metric(bake_probe(origin, second, face_res, pool));
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    cmp.ratio[e] = safe_ratio(cmp.first.edges[e].mean, cmp.second.edges[e].mean);
  }
  cmp.overall_ratio = safe_ratio(cmp.first.mean, cmp.second.mean);
  return cmp;
}

std::optional<double> SeamStudy::ratio(int e) const {
  if (!splat || !raytrace) {
    return std::nullopt;
  }
  if (e < 0) {
    return safe_ratio(splat->mean, raytrace->mean);
  }
  return safe_ratio(splat->edges[e].mean, raytrace->edges[e].mean);
}

namespace {

nlohmann::json edge_json(const EdgeStats &s) {
  return {{"mean", s.mean}, {"max", s.max}, {"samples", s.samples},
          {"interior_mean", s.interior_mean}};
}

nlohmann::json optional_json(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

std::string seam_study_json(const SeamStudy &study) {
  using nlohmann::json;
  json edges = json::array();
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    const auto [fa, fb] = cube_edges()[e];
    json row = {{"face_a", std::string(face_key(fa))}, {"face_b", std::string(face_key(fb))}};
    if (study.raytrace) {
      row["raytrace"] = edge_json(study.raytrace->edges[e]);
    }
    if (study.splat) {
      row["splat"] = edge_json(study.splat->edges[e]);
    }
    row["ratio"] = optional_json(study.ratio(e));
    edges.push_back(row);
  }
  json aggregate = json::object();
  if (study.raytrace) {
    aggregate["raytrace"] = {{"mean", study.raytrace->mean}, {"max", study.raytrace->max}};
  }
  if (study.splat) {
    aggregate["splat"] = {{"mean", study.splat->mean}, {"max", study.splat->max}};
  }
  aggregate["ratio"] = optional_json(study.ratio());

  json doc = {
      {"origin", {study.origin.x(), study.origin.y(), study.origin.z()}},
      {"face_resolution", study.face_res},
      {"edges", edges},
      {"aggregate", aggregate},
  };
  if (study.exact) {
    doc["exact_edge"] = {{"max_linear", study.exact->max_linear},
                         {"max_quantized", study.exact->max_quantized},
                         {"rays", study.exact->rays}};
  }
  return doc.dump(2) + "\n";
}

std::string seam_study_csv(const SeamStudy &study) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "edge,face_a,face_b,renderer,mean,max,samples,interior_mean,ratio\n";
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    const auto [fa, fb] = cube_edges()[e];
    const auto ratio = study.ratio(e);
    auto row = [&](const char *name, const SeamReport &r) {
      const EdgeStats &s = r.edges[e];
      out << e << ',' << face_key(fa) << ',' << face_key(fb) << ',' << name << ',' << s.mean
          << ',' << s.max << ',' << s.samples << ',' << s.interior_mean << ',';
      if (ratio) {
        out << *ratio;
      }
      out << '\n';
    };
    if (study.raytrace) {
      row("raytrace", *study.raytrace);
    }
    if (study.splat) {
      row("splat", *study.splat);
    }
  }
  return out.str();
}

} // namespace gbake
