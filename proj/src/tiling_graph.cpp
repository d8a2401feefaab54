#include "htn/tiling_graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace htn::tiling {

namespace {

constexpr int kNone = -1;

}  // namespace

TilingGraph TilingGraph::build(int steps) {
    if (steps < 0)
        throw std::invalid_argument("build: steps must be >= 0");

    TilingGraph g;
    g.steps_ = steps;

    // Central pentagon.
    for (int j = 0; j < 5; ++j)
        g.vertices_.push_back(Vertex{j, 'a', 0, j});
    Tile center;
    center.id = 0;
    center.layer = 0;
    for (int j = 0; j < 5; ++j) {
        Edge e;
        e.id = j;
        e.v0 = j;
        e.v1 = (j + 1) % 5;
        e.tile_a = 0;
        e.slot_a = j;
        e.boundary_position = j;
        g.edges_.push_back(e);
        center.edges[j] = j;
        center.vertices[j] = j;
        g.boundary_vertices_.push_back(j);
        g.boundary_edges_.push_back(j);
    }
    g.tiles_.push_back(center);
    g.boundary_word_ = "aaaaa";
    g.layer_tile_counts_.push_back(1);

    g.mqa_ = inflation::mqa_build(inflation::LetterSequence{"aaaaa", true, 0}, steps);

    for (int s = 0; s < steps; ++s)
        g.inflate_step();

    g.rebuild_dual();
    return g;
}

void TilingGraph::inflate_step() {
    const std::vector<int> bV = boundary_vertices_;
    const std::vector<int> bE = boundary_edges_;
    const std::string w = boundary_word_;
    const int L = static_cast<int>(w.size());
    const int layer = static_cast<int>(layer_tile_counts_.size());
    const long tiles_before = static_cast<long>(tiles_.size());

    auto new_vertex = [&](char type) {
        const int id = static_cast<int>(vertices_.size());
        vertices_.push_back(Vertex{id, type, layer, kNone});
        return id;
    };
    auto new_edge = [&](int v0, int v1) {
        const int id = static_cast<int>(edges_.size());
        Edge e;
        e.id = id;
        e.v0 = v0;
        e.v1 = v1;
        edges_.push_back(e);
        return id;
    };
    auto attach = [&](int edge_id, int tile_id, int slot) {
        Edge& e = edges_[edge_id];
        if (e.tile_a == kNone) {
            e.tile_a = tile_id;
            e.slot_a = slot;
        } else if (e.tile_b == kNone) {
            e.tile_b = tile_id;
            e.slot_b = slot;
        } else {
            throw std::logic_error("edge attached to more than two tiles");
        }
    };
    auto new_tile = [&](const std::array<int, 5>& edges, const std::array<int, 5>& verts) {
        Tile t;
        t.id = static_cast<int>(tiles_.size());
        t.layer = layer;
        t.edges = edges;
        t.vertices = verts;
        tiles_.push_back(t);
        for (int j = 0; j < 5; ++j)
            attach(edges[j], t.id, j);
        return t.id;
    };

    // Fan completing each old boundary vertex to degree 4. An 'a' vertex gets
    // a dedicated tile between the two neighboring edge tiles; a 'b' vertex
    // only a shared radial edge.
    struct Fan {
        int near_top = kNone;  // top of the radial edge toward the preceding edge tile
        int far_top = kNone;   // top of the radial edge toward the following edge tile
        int near_rad = kNone;
        int far_rad = kNone;
        int vt = kNone;        // fan tile for 'a' vertices
    };
    std::vector<Fan> fan(L);

    for (int i = 0; i < L; ++i) {
        if (w[i] == 'a') {
            const int x1 = new_vertex('b');
            const int x2 = new_vertex('a');
            const int x3 = new_vertex('a');
            const int x4 = new_vertex('b');
            const int rad1 = new_edge(bV[i], x1);
            const int u1 = new_edge(x1, x2);
            const int u2 = new_edge(x2, x3);
            const int u3 = new_edge(x3, x4);
            const int rad2 = new_edge(x4, bV[i]);
            const int vt = new_tile({rad1, u1, u2, u3, rad2}, {bV[i], x1, x2, x3, x4});
            fan[i] = {x4, x1, rad2, rad1, vt};
        } else {
            const int rt = new_vertex('b');
            const int rad = new_edge(bV[i], rt);
            fan[i] = {rt, rt, rad, rad, kNone};
        }
    }

    // One edge tile per old boundary edge, glued onto it from outside.
    std::vector<int> q(L), t1(L), t2(L);
    for (int i = 0; i < L; ++i) {
        const int inext = (i + 1) % L;
        q[i] = new_vertex('a');
        t1[i] = new_edge(fan[i].near_top, q[i]);
        t2[i] = new_edge(q[i], fan[inext].far_top);
        new_tile({fan[i].near_rad, t1[i], t2[i], fan[inext].far_rad, bE[i]},
                 {bV[i], fan[i].near_top, q[i], fan[inext].far_top, bV[inext]});
    }

    // New boundary walk. Rotating it one pair right puts the top vertex of
    // the last edge tile at position 0, which aligns every letter's image
    // with its parent's anchor (image of old letter i starts at the top
    // vertex of edge tile i-1).
    std::vector<int> nbV, nbE;
    nbV.reserve(bV.size() * 5);
    nbE.reserve(bV.size() * 5);
    for (int i = 0; i < L; ++i) {
        if (w[i] == 'a') {
            const Tile& vt = tiles_[fan[i].vt];
            nbV.push_back(vt.vertices[1]);
            nbE.push_back(vt.edges[1]);
            nbV.push_back(vt.vertices[2]);
            nbE.push_back(vt.edges[2]);
            nbV.push_back(vt.vertices[3]);
            nbE.push_back(vt.edges[3]);
            nbV.push_back(vt.vertices[4]);
            nbE.push_back(t1[i]);
        } else {
            nbV.push_back(fan[i].near_top);
            nbE.push_back(t1[i]);
        }
        nbV.push_back(q[i]);
        nbE.push_back(t2[i]);
    }
    std::rotate(nbV.rbegin(), nbV.rbegin() + 1, nbV.rend());
    std::rotate(nbE.rbegin(), nbE.rbegin() + 1, nbE.rend());

    for (int e : bE) edges_[e].boundary_position = kNone;
    for (int v : bV) vertices_[v].boundary_position = kNone;

    std::string word;
    word.reserve(nbV.size());
    for (size_t p = 0; p < nbV.size(); ++p) {
        vertices_[nbV[p]].boundary_position = static_cast<int>(p);
        edges_[nbE[p]].boundary_position = static_cast<int>(p);
        word += vertices_[nbV[p]].type;
    }

    if (word != mqa_.layers[layer].letters)
        throw std::logic_error("vertex completion disagrees with the substitution rule at layer " +
                               std::to_string(layer));

    boundary_vertices_ = std::move(nbV);
    boundary_edges_ = std::move(nbE);
    boundary_word_ = std::move(word);
    layer_tile_counts_.push_back(static_cast<long>(tiles_.size()) - tiles_before);
}

void TilingGraph::rebuild_dual() {
    const int T = tile_count();
    const int L = boundary_length();
    dual_adj_.assign(T + L, {});
    for (const Edge& e : edges_) {
        if (e.interior()) {
            dual_adj_[e.tile_a].push_back({e.tile_b, e.id});
            dual_adj_[e.tile_b].push_back({e.tile_a, e.id});
        } else {
            // A boundary edge at position p separates the outer gaps p and
            // p+1; crossing it moves between its tile and either gap.
            const int p = e.boundary_position;
            const int g0 = T + p;
            const int g1 = T + (p + 1) % L;
            dual_adj_[e.tile_a].push_back({g0, e.id});
            dual_adj_[e.tile_a].push_back({g1, e.id});
            dual_adj_[g0].push_back({e.tile_a, e.id});
            dual_adj_[g1].push_back({e.tile_a, e.id});
        }
    }
    for (auto& adj : dual_adj_)
        std::sort(adj.begin(), adj.end());

    vertex_tiles_.assign(vertex_count(), {});
    for (const Tile& t : tiles_)
        for (int v : t.vertices)
            vertex_tiles_[v].push_back(t.id);
}

TilingGraph::CutResult TilingGraph::minimal_cut(Interval region) const {
    const int L = boundary_length();
    if (region.length <= 0 || region.length >= L)
        throw std::invalid_argument("minimal_cut: region must be a proper nonempty interval");
    const int T = tile_count();
    const int src = T + mod(region.begin);
    const int dst = T + mod(region.begin + region.length);

    std::vector<int> dist(dual_nodes(), -1);
    std::vector<std::pair<int, int>> via(dual_nodes(), {kNone, kNone});
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty() && dist[dst] < 0) {
        const int cur = queue.front();
        queue.pop_front();
        for (auto [nxt, pe] : dual_adj_[cur]) {
            if (dist[nxt] >= 0)
                continue;
            dist[nxt] = dist[cur] + 1;
            via[nxt] = {cur, pe};
            queue.push_back(nxt);
        }
    }
    if (dist[dst] < 0)
        throw std::logic_error("minimal_cut: dual graph disconnected");

    CutResult res;
    res.cut_edges = dist[dst];
    for (int cur = dst; cur != src; cur = via[cur].first)
        res.path.push_back(via[cur].second);
    std::reverse(res.path.begin(), res.path.end());
    return res;
}

std::vector<int> TilingGraph::cut_distances_from(int gap_position) const {
    const int T = tile_count();
    const int L = boundary_length();
    std::vector<int> dist(dual_nodes(), -1);
    std::deque<int> queue{T + mod(gap_position)};
    dist[queue.front()] = 0;
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (auto [nxt, pe] : dual_adj_[cur]) {
            (void)pe;
            if (dist[nxt] >= 0)
                continue;
            dist[nxt] = dist[cur] + 1;
            queue.push_back(nxt);
        }
    }
    std::vector<int> gaps(L);
    for (int p = 0; p < L; ++p)
        gaps[p] = dist[T + p];
    return gaps;
}

RecenterResult TilingGraph::recenter(int new_center_tile) const {
    if (new_center_tile < 0 || new_center_tile >= tile_count())
        throw std::invalid_argument("recenter: no such tile");

    // Layer = BFS distance over tiles sharing a vertex; vertex inflation adds
    // exactly the tiles touching the previous layer's vertices, so this
    // reproduces the stored layers when run from the central tile.
    std::vector<int> new_layer(tile_count(), -1);
    std::deque<int> queue{new_center_tile};
    new_layer[new_center_tile] = 0;
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int v : tiles_[cur].vertices) {
            for (int nxt : vertex_tiles_[v]) {
                if (new_layer[nxt] >= 0)
                    continue;
                new_layer[nxt] = new_layer[cur] + 1;
                queue.push_back(nxt);
            }
        }
    }

    RecenterResult res{*this, {}};
    int max_layer = 0;
    for (Tile& t : res.graph.tiles_) {
        t.layer = new_layer[t.id];
        max_layer = std::max(max_layer, t.layer);
    }
    res.graph.layer_tile_counts_.assign(max_layer + 1, 0);
    for (const Tile& t : res.graph.tiles_)
        res.graph.layer_tile_counts_[t.layer]++;

    // Boundary stretches whose tiles moved strictly closer to the new center
    // fine-grain; stretches that moved away coarse-grain.
    const int L = boundary_length();
    std::vector<int> delta(L);
    for (int p = 0; p < L; ++p)
        delta[p] = new_layer[edges_[boundary_edges_[p]].tile_a] - steps_;
    auto sign = [](int d) { return d > 0 ? 1 : (d < 0 ? -1 : 0); };

    int start = kNone;
    for (int p = 0; p < L; ++p) {
        if (sign(delta[p]) != sign(delta[mod(p - 1)])) {
            start = p;
            break;
        }
    }

    auto emit = [&](int begin, int len) {
        if (sign(delta[begin]) == 0)
            return;
        int depth = std::abs(delta[begin]);
        for (int j = 1; j < len; ++j)
            depth = std::min(depth, std::abs(delta[mod(begin + j)]));
        RegionMap m;
        m.source = {begin, len};
        m.source_layer = steps_;
        m.kind = delta[begin] > 0 ? RegionKind::coarse : RegionKind::fine;
        int lo = begin, len_cur = len, layer = steps_;
        for (int d = 0; d < depth && layer > 0; ++d, --layer) {
            const auto& par = mqa_.parent[layer - 1];
            const int nlen = static_cast<int>(par.size());
            const int plen = static_cast<int>(mqa_.layers[layer - 1].letters.size());
            if (len_cur >= nlen) {
                lo = static_cast<int>(par[lo % nlen]);
                len_cur = plen;
                continue;
            }
            const int last = lo + len_cur - 1;
            const int lo_p = static_cast<int>(par[lo % nlen]);
            const int hi_p = static_cast<int>(par[last % nlen]) + (last >= nlen ? plen : 0) + 1;
            lo = lo_p;
            len_cur = hi_p - lo_p;
        }
        m.target = {lo, len_cur};
        m.target_layer = layer;
        res.regions.push_back(m);
    };

    if (start == kNone) {
        emit(0, L);
    } else {
        int p = start;
        do {
            int len = 1;
            while (len < L && sign(delta[mod(p + len)]) == sign(delta[p]))
                ++len;
            emit(p, len);
            p = mod(p + len);
        } while (p != start);
    }

    return res;
}

TilingGraph::RegionMap TilingGraph::deflate_region(Interval letters) const {
    if (steps_ == 0)
        throw std::invalid_argument("deflate_region: nothing to deflate at steps=0");
    const int L = boundary_length();
    if (letters.length <= 0 || letters.length > L)
        throw std::invalid_argument("deflate_region: empty region");

    const auto& starts = mqa_.image_start[steps_ - 1];
    const auto& par = mqa_.parent[steps_ - 1];
    auto is_start = [&](int p) {
        return std::binary_search(starts.begin(), starts.end(), static_cast<long>(mod(p)));
    };
    const int begin = mod(letters.begin);
    const int end = mod(letters.begin + letters.length);
    if (!is_start(begin) || !is_start(end)) {
        auto snap = [&](int p, int dir) {
            int s = p;
            while (!is_start(mod(s))) s += dir;
            return mod(s);
        };
        throw std::invalid_argument(
            "deflate_region: region not aligned with inflation blocks; nearest aligned interval is [" +
            std::to_string(snap(begin, -1)) + ", " + std::to_string(snap(end, +1)) + ")");
    }

    RegionMap m;
    m.source = {begin, letters.length};
    m.source_layer = steps_;
    m.kind = RegionKind::coarse;
    const int prev_len = static_cast<int>(mqa_.layers[steps_ - 1].letters.size());
    const int tb = static_cast<int>(par[begin]);
    const int te = letters.length == L
                       ? tb + prev_len
                       : static_cast<int>(par[end]) + (end < begin || letters.length == L ? prev_len : 0);
    m.target = {tb, te - tb};
    m.target_layer = steps_ - 1;
    return m;
}

}  // namespace htn::tiling
