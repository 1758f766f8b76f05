#include "gbake/synthetic.hpp"

#include "gbake/camera.hpp"
#include "gbake/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace gbake::synthetic {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Quat random_rotation(Rng &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Quat q(n(rng), n(rng), n(rng), n(rng));
  return q.norm() > 1e-12 ? q.normalized() : Quat::Identity();
}

void set_color(GaussianParticle &p, const Rgb &rgb) {
  for (int c = 0; c < 3; ++c) {
    p.sh[c * kShCoeffsPerChannel] = dc_for_color(rgb[c]);
  }
}

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

std::vector<GaussianParticle> random_scene(std::size_t count, Rng &rng) {
  std::vector<GaussianParticle> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    GaussianParticle p;
    p.mean = Vec3(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2));
    const double base = std::exp(uniform(rng, std::log(0.01), std::log(0.08)));
    p.scale = base * Vec3(uniform(rng, 0.3, 1.0), uniform(rng, 0.3, 1.0), uniform(rng, 0.3, 1.0));
    p.rotation = random_rotation(rng);
    p.opacity = uniform(rng, 0.05, 1.0);
    for (int c = 0; c < 3; ++c) {
      p.sh[c * kShCoeffsPerChannel] = static_cast<float>(uniform(rng, -1.5, 1.5));
      for (int k = 1; k < kShCoeffsPerChannel; ++k) {
        p.sh[c * kShCoeffsPerChannel + k] = static_cast<float>(uniform(rng, -0.2, 0.2));
      }
    }
    out.push_back(p);
  }
  return out;
}

Rgb wall_color(int wall, const Vec3 &pos) {
  static const Rgb base[6] = {{0.8, 0.3, 0.2}, {0.2, 0.6, 0.8}, {0.9, 0.9, 0.8},
                              {0.4, 0.3, 0.2}, {0.3, 0.7, 0.3}, {0.7, 0.6, 0.3}};
  const int checker = (static_cast<int>(std::floor(pos.x() * 2.0)) +
                       static_cast<int>(std::floor(pos.y() * 2.0)) +
                       static_cast<int>(std::floor(pos.z() * 2.0))) &
                      1;
  return base[wall] * (checker ? 1.0 : 0.6);
}

std::vector<GaussianParticle> room_scene(std::size_t count, Rng &rng) {
  constexpr double kHalf = 2.0;
  std::vector<GaussianParticle> out;
  out.reserve(count);
  const std::size_t clutter = count / 10;
  for (std::size_t n = 0; n < count; ++n) {
    GaussianParticle p;
    p.rotation = Quat::Identity();
    if (n >= clutter) {
      const int wall = static_cast<int>(n % 6);
      const int axis = wall / 2;
      const double side = (wall % 2 == 0) ? kHalf : -kHalf;
      for (int a = 0; a < 3; ++a) {
        p.mean[a] = (a == axis) ? side + uniform(rng, -0.02, 0.02) : uniform(rng, -kHalf, kHalf);
      }
      for (int a = 0; a < 3; ++a) {
        p.scale[a] = (a == axis) ? 0.01 : uniform(rng, 0.04, 0.1);
      }
      p.opacity = uniform(rng, 0.6, 0.99);
      set_color(p, wall_color(wall, p.mean));
    } else {
      Vec3 pos;
      do {
        pos = Vec3(uniform(rng, -1.9, 1.9), uniform(rng, -1.9, 1.9), uniform(rng, -1.9, 1.9));
      } while (pos.cwiseAbs().maxCoeff() < 1.2);
      p.mean = pos;
      p.scale = Vec3(uniform(rng, 0.02, 0.08), uniform(rng, 0.02, 0.08), uniform(rng, 0.02, 0.08));
      p.rotation = random_rotation(rng);
      p.opacity = uniform(rng, 0.3, 0.9);
      set_color(p, Rgb(uniform(rng, 0.1, 0.9), uniform(rng, 0.1, 0.9), uniform(rng, 0.1, 0.9)));
    }
    // Mild view dependence on every particle.
    for (int c = 0; c < 3; ++c) {
      for (int k = 1; k < 4; ++k) {
        p.sh[c * kShCoeffsPerChannel + k] = static_cast<float>(uniform(rng, -0.05, 0.05));
      }
    }
    out.push_back(p);
  }
  return out;
}

std::vector<GaussianParticle> seam_scene(std::size_t count, Rng &rng) {
  const auto edges = [] {
    std::vector<std::pair<Vec3, Vec3>> e;
    for (std::size_t a = 0; a < kAllFaces.size(); ++a) {
      for (std::size_t b = a + 1; b < kAllFaces.size(); ++b) {
        const Vec3 fa = face_basis(kAllFaces[a]).forward;
        const Vec3 fb = face_basis(kAllFaces[b]).forward;
        if (fa.dot(fb) == 0.0) {
          e.emplace_back(fa, fb);
        }
      }
    }
    return e;
  }();

  std::vector<GaussianParticle> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto &[fa, fb] = edges[n % edges.size()];
    const Vec3 bisector = (fa + fb) / std::sqrt(2.0);
    const Vec3 along = fa.cross(fb);
    const Vec3 normal = (fa - fb) / std::sqrt(2.0);
    // Position along the edge, and tilt out of the plane holding the edge.
    const double beta = radians(uniform(rng, -30.0, 30.0));
    const double tilt = radians(uniform(rng, -10.0, 10.0));
    const Vec3 dir = std::cos(tilt) * (std::cos(beta) * bisector + std::sin(beta) * along) +
                     std::sin(tilt) * normal;

    GaussianParticle p;
    p.mean = uniform(rng, 1.5, 2.5) * dir;
    const double major = uniform(rng, 0.15, 0.35);
    p.scale = Vec3(major, major / uniform(rng, 3.0, 5.0), major / uniform(rng, 3.0, 5.0));
    p.rotation = random_rotation(rng);
    p.opacity = uniform(rng, 0.5, 0.95);
    set_color(p, Rgb(uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.95)));
    out.push_back(p);
  }
  return out;
}

std::vector<GaussianParticle> smooth_scene(std::size_t count, Rng &rng) {
  std::vector<GaussianParticle> out;
  out.reserve(count);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t n = 0; n < count; ++n) {
    Vec3 dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    GaussianParticle p;
    p.mean = 3.0 * dir;
    p.scale = Vec3::Constant(uniform(rng, 0.6, 0.8));
    p.opacity = 0.6;
    set_color(p, Rgb(0.5 + 0.4 * dir.x(), 0.5 + 0.4 * dir.y(), 0.5 + 0.4 * dir.z()));
    out.push_back(p);
  }
  return out;
}

} // namespace

std::string_view scene_kind_name(SceneKind kind) {
  switch (kind) {
  case SceneKind::random:
    return "random";
  case SceneKind::room:
    return "room";
  case SceneKind::seam:
    return "seam";
  case SceneKind::smooth:
    return "smooth";
  }
  return "unknown";
}

SceneKind parse_scene_kind(std::string_view name) {
  for (SceneKind k : {SceneKind::random, SceneKind::room, SceneKind::seam, SceneKind::smooth}) {
    if (scene_kind_name(k) == name) {
      return k;
    }
  }
  throw DomainError("unknown scene kind '" + std::string(name) +
                    "' (expected random, room, seam or smooth)");
}

int scene_kind_sh_degree(SceneKind kind) {
  switch (kind) {
  case SceneKind::random:
    return 3;
  case SceneKind::room:
    return 1;
  case SceneKind::seam:
  case SceneKind::smooth:
    return 0;
  }
  return 3;
}

std::size_t default_count(SceneKind kind) { return kind == SceneKind::seam ? 200 : 10000; }

std::vector<GaussianParticle> generate(SceneKind kind, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
  case SceneKind::random:
    return random_scene(count, rng);
  case SceneKind::room:
    return room_scene(count, rng);
  case SceneKind::seam:
    return seam_scene(count, rng);
  case SceneKind::smooth:
    return smooth_scene(count, rng);
  }
  return {};
}

} // namespace gbake::synthetic
