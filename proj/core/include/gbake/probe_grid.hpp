#pragma once

#include "gbake/types.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace gbake {

inline constexpr double kDefaultOverlap = 0.25;

/// Regular grid of probes inside an artist-defined box.
struct ProbeGrid {
  Vec3 bbox_min = Vec3::Zero();
  Vec3 bbox_max = Vec3::Ones();
  std::array<int, 3> resolution = {1, 1, 1};
  /// Influence overlap between neighbours, as a fraction of the cell size.
  double overlap = kDefaultOverlap;

  std::size_t probe_count() const {
    return static_cast<std::size_t>(resolution[0]) * static_cast<std::size_t>(resolution[1]) *
           static_cast<std::size_t>(resolution[2]);
  }

  Vec3 cell_size() const;

  /// Throws DomainError when the box is degenerate, a resolution component is
  /// not positive, or the overlap is negative.
  void validate() const;

  friend bool operator==(const ProbeGrid &, const ProbeGrid &) = default;
};

/// Cell centers, ordered k-major, then j, then i (x varies fastest).
std::vector<Vec3> probe_positions(const ProbeGrid &grid);

/// Full influence box dimensions shared by every probe: cell * (1 + overlap).
Vec3 influence_extents(const ProbeGrid &grid);

struct Probe {
  int id = 0;
  Vec3 position = Vec3::Zero();
  Vec3 influence_extents = Vec3::Zero();
};

/// Probes with ids 0..N-1 in probe_positions order.
std::vector<Probe> make_probes(const ProbeGrid &grid);

} // namespace gbake
