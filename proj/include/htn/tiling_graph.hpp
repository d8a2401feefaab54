#pragma once

#include <array>
#include <string>
#include <vector>

#include "htn/inflation.hpp"

namespace htn::tiling {

// One pentagon of the patch. edges[j] joins vertices[j] and vertices[(j+1)%5];
// the index order is the tile's cycle direction, shared consistently by the
// whole patch so that neighbors traverse a common edge in opposite directions.
struct Tile {
    int id = -1;
    int layer = 0;
    std::array<int, 5> edges{};
    std::array<int, 5> vertices{};
};

struct Edge {
    int id = -1;
    int v0 = -1, v1 = -1;
    int tile_a = -1, slot_a = -1;
    int tile_b = -1, slot_b = -1;
    int boundary_position = -1;  // index in the current boundary walk, else -1

    bool interior() const { return tile_b >= 0; }
};

struct Vertex {
    int id = -1;
    char type = 'a';             // boundary classification when created
    int layer = 0;               // inflation step at which the vertex appeared
    int boundary_position = -1;  // current boundary position, else -1
};

// Cyclic interval of boundary positions [begin, begin+length).
struct Interval {
    int begin = 0;
    int length = 0;
};

struct RecenterResult;

class TilingGraph {
  public:
    // {5,4} patch grown by vertex inflation from a central tile. The derived
    // boundary word is checked letter-for-letter against the substitution
    // rule; a mismatch aborts the build.
    static TilingGraph build(int steps);

    int steps() const { return steps_; }
    int tile_count() const { return static_cast<int>(tiles_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }

    const Tile& tile(int id) const { return tiles_[id]; }
    const Edge& edge(int id) const { return edges_[id]; }
    const Vertex& vertex(int id) const { return vertices_[id]; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    int boundary_length() const { return static_cast<int>(boundary_edges_.size()); }
    const std::string& boundary_word() const { return boundary_word_; }
    int boundary_edge(int position) const { return boundary_edges_[mod(position)]; }
    int boundary_vertex(int position) const { return boundary_vertices_[mod(position)]; }
    const std::vector<long>& layer_tile_counts() const { return layer_tile_counts_; }
    const inflation::MQAStack& mqa() const { return mqa_; }

    struct CutResult {
        int cut_edges = 0;
        std::vector<int> path;  // primal edge ids crossed by the dual path
    };

    // Minimal cut separating a contiguous boundary region from its
    // complement: shortest path in the dual graph (tiles plus one outer node
    // per boundary gap) between the gap points at the region's two ends.
    CutResult minimal_cut(Interval region) const;

    // Dual-graph distances from one gap to every other gap; distance to gap
    // (p+len) bounds the cut for the region starting at p of length len.
    std::vector<int> cut_distances_from(int gap_position) const;

    enum class RegionKind { fine, coarse };

    struct RegionMap {
        Interval source;
        int source_layer = 0;
        Interval target;  // deflation image of source under the parent map
        int target_layer = 0;
        RegionKind kind = RegionKind::coarse;
    };

    // Relabels tile layers by their distance from new_center (tiles sharing a
    // vertex are adjacent, matching vertex inflation) and reports which
    // boundary stretches coarse- or fine-grain relative to the old labels.
    tiling::RecenterResult recenter(int new_center_tile) const;

    // Coarse-grains a block-aligned stretch of the boundary word one layer.
    // Throws std::invalid_argument for misaligned regions, naming the nearest
    // aligned interval.
    RegionMap deflate_region(Interval letters) const;

  private:
    TilingGraph() = default;

    int mod(int p) const {
        const int n = boundary_length();
        return ((p % n) + n) % n;
    }

    void inflate_step();
    void rebuild_dual();
    int dual_nodes() const { return tile_count() + boundary_length(); }

    std::vector<Tile> tiles_;
    std::vector<Edge> edges_;
    std::vector<Vertex> vertices_;
    std::vector<int> boundary_edges_;     // edge ids, cyclic walk order
    std::vector<int> boundary_vertices_;  // vertex ids; vertex i starts edge i
    std::string boundary_word_;
    std::vector<long> layer_tile_counts_;
    inflation::MQAStack mqa_;
    int steps_ = 0;

    // Dual adjacency: node -> (neighbor node, primal edge id). Tiles come
    // first, then one node per boundary gap.
    std::vector<std::vector<std::pair<int, int>>> dual_adj_;
    // vertex id -> incident tiles, for the recenter BFS
    std::vector<std::vector<int>> vertex_tiles_;
};

struct RecenterResult {
    TilingGraph graph;
    std::vector<TilingGraph::RegionMap> regions;
};

}  // namespace htn::tiling
