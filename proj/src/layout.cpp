#include "htn/layout.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace htn::geometry {

std::vector<DiskPoint> vertex_coordinates(const TilingParams& p,
                                          const tiling::TilingGraph& g) {
    if (p.n != 5)
        throw std::invalid_argument("vertex_coordinates: patch construction is pentagonal");

    const double rho = std::tanh(tile_circumradius(p) / 2.0);
    std::vector<DiskPoint> coord(g.vertex_count());
    std::vector<bool> placed(g.vertex_count(), false);

    const tiling::Tile& center = g.tile(0);
    for (int j = 0; j < 5; ++j) {
        const double phi = kPi / 2.0 + 2.0 * kPi * j / 5.0;
        coord[center.vertices[j]] = {rho * std::cos(phi), rho * std::sin(phi)};
        placed[center.vertices[j]] = true;
    }

    // Reflection chains agree to ~1e-12 in euclidean terms; the hyperbolic
    // metric would amplify that roundoff by 2/(1-r^2) near the rim, so the
    // consistency gate is euclidean.
    auto settle = [&](int vid, DiskPoint pt) {
        if (!placed[vid]) {
            coord[vid] = pt;
            placed[vid] = true;
            return;
        }
        if (std::abs(coord[vid].z() - pt.z()) > 1e-9)
            throw std::logic_error("vertex_coordinates: inconsistent placement of vertex " +
                                   std::to_string(vid));
    };

    // Tile-by-tile BFS across shared edges; each new tile is the mirror image
    // of its parent, so its vertex cycle runs opposite to the parent's.
    std::vector<bool> done(g.tile_count(), false);
    std::deque<int> queue{0};
    done[0] = true;
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        const tiling::Tile& t = g.tile(cur);
        for (int slot = 0; slot < 5; ++slot) {
            const tiling::Edge& e = g.edge(t.edges[slot]);
            if (!e.interior())
                continue;
            const int other = e.tile_a == cur ? e.tile_b : e.tile_a;
            if (done[other])
                continue;
            const int oslot = e.tile_a == cur ? e.slot_b : e.slot_a;
            const tiling::Tile& ot = g.tile(other);

            const Geodesic mirror =
                Geodesic::through(coord[t.vertices[slot]], coord[t.vertices[(slot + 1) % 5]]);
            // t.vertices[slot + m] reflects onto ot.vertices[oslot + 1 - m].
            for (int m = 0; m < 5; ++m) {
                const int src = t.vertices[(slot + m) % 5];
                const int dst = ot.vertices[((oslot + 1 - m) % 5 + 5) % 5];
                settle(dst, m == 0 || m == 1 ? coord[src] : reflect(mirror, coord[src]));
            }
            done[other] = true;
            queue.push_back(other);
        }
    }

    for (int v = 0; v < g.vertex_count(); ++v)
        if (!placed[v])
            throw std::logic_error("vertex_coordinates: unreached vertex");
    return coord;
}

}  // namespace htn::geometry
