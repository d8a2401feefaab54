#pragma once

#include <vector>

#include "htn/disk_geometry.hpp"
#include "htn/tiling_graph.hpp"

namespace htn::geometry {

// Poincare-disk coordinates for every vertex of the patch. The central tile
// is placed symmetrically about the origin with one vertex at angle pi/2;
// every other tile is the reflection of an already placed neighbor across
// their shared edge. Throws std::logic_error when two placements of the same
// vertex disagree by more than 1e-9 (euclidean).
std::vector<DiskPoint> vertex_coordinates(const TilingParams& p,
                                          const tiling::TilingGraph& g);

}  // namespace htn::geometry
