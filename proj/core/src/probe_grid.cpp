#include "gbake/probe_grid.hpp"

#include "gbake/error.hpp"

#include <cmath>

namespace gbake {

void ProbeGrid::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (resolution[a] < 1) {
      throw DomainError("grid resolution components must be positive");
    }
  }
  if (!bbox_min.allFinite() || !bbox_max.allFinite() ||
      !(bbox_min.array() < bbox_max.array()).all()) {
    throw DomainError("bbox_min must be strictly less than bbox_max on every axis");
  }
  if (!(overlap >= 0.0) || !std::isfinite(overlap)) {
    throw DomainError("overlap must be non-negative");
  }
}

Vec3 ProbeGrid::cell_size() const {
  const Vec3 n(resolution[0], resolution[1], resolution[2]);
  return (bbox_max - bbox_min).cwiseQuotient(n);
}

std::vector<Vec3> probe_positions(const ProbeGrid &grid) {
  grid.validate();
  const Vec3 extent = grid.bbox_max - grid.bbox_min;
  const auto [nx, ny, nz] = grid.resolution;
  std::vector<Vec3> positions;
  positions.reserve(grid.probe_count());
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const Vec3 frac((i + 0.5) / nx, (j + 0.5) / ny, (k + 0.5) / nz);
        positions.push_back(grid.bbox_min + frac.cwiseProduct(extent));
      }
    }
  }
  return positions;
}

Vec3 influence_extents(const ProbeGrid &grid) {
  grid.validate();
  return grid.cell_size() * (1.0 + grid.overlap);
}

std::vector<Probe> make_probes(const ProbeGrid &grid) {
  const auto positions = probe_positions(grid);
  const Vec3 extents = influence_extents(grid);
  std::vector<Probe> probes;
  probes.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    probes.push_back(Probe{static_cast<int>(i), positions[i], extents});
  }
  return probes;
}

} // namespace gbake
