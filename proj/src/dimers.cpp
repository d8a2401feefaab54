#include "htn/dimers.hpp"

#include <stdexcept>

namespace htn::dimers {

DimerState seed_state(int logical) {
    if (logical != 0 && logical != 1)
        throw std::invalid_argument("seed_state: logical must be 0 or 1");
    DimerState s;
    s.num_modes = 10;
    s.partner.resize(10);
    s.orient.resize(10);
    for (int j = 0; j < 5; ++j) {
        s.partner[j] = j + 5;
        s.partner[j + 5] = j;
        // Covariance sign between modes j and j+5: all arrows point inward
        // (j+5 -> j) for |0bar>; |1bar> alternates around the pentagon.
        const int sign = logical == 0 ? -1 : (j % 2 == 0 ? +1 : -1);
        s.orient[j] = static_cast<signed char>(sign);
        s.orient[j + 5] = static_cast<signed char>(-sign);
    }
    return s;
}

DimerState contract(const tiling::TilingGraph& g, const std::vector<int>& logical) {
    const int T = g.tile_count();
    std::vector<int> logic(T, 0);
    if (!logical.empty()) {
        if (static_cast<int>(logical.size()) != T)
            throw std::invalid_argument("contract: logical input must cover every tile");
        logic = logical;
    }

    const long M = 10L * T;
    const int L = g.boundary_length();
    const DimerState seeds[2] = {seed_state(0), seed_state(1)};

    // Network wiring: fusion partner and arrow per interior mode, boundary
    // mode index per open mode. Fusion glues the two modes of an edge to the
    // neighbor's two in reversed order. Arrows point from the earlier-layer
    // tile, or between same-layer tiles from the slot-0 side; both choices
    // are invariant under the tiling's rotation symmetry, unlike the edge's
    // registration order.
    std::vector<long> fuse(M, -1);
    std::vector<signed char> fuse_arrow(M, 0);
    std::vector<int> bmode(M, -1);
    for (const auto& e : g.edges()) {
        if (e.interior()) {
            bool a_leads;
            const int la = g.tile(e.tile_a).layer;
            const int lb = g.tile(e.tile_b).layer;
            if (la != lb)
                a_leads = la < lb;
            else if (e.slot_a == 0 || e.slot_b == 0)
                a_leads = e.slot_a == 0;
            else
                throw std::logic_error("contract: same-layer edge without a slot-0 side");
            const long f0 = 10L * (a_leads ? e.tile_a : e.tile_b) + 2 * (a_leads ? e.slot_a : e.slot_b);
            const long t0 = 10L * (a_leads ? e.tile_b : e.tile_a) + 2 * (a_leads ? e.slot_b : e.slot_a);
            fuse[f0] = t0 + 1;
            fuse[t0 + 1] = f0;
            fuse[f0 + 1] = t0;
            fuse[t0] = f0 + 1;
            fuse_arrow[f0] = +1;
            fuse_arrow[t0 + 1] = -1;
            fuse_arrow[f0 + 1] = +1;
            fuse_arrow[t0] = -1;
        } else {
            const long a0 = 10L * e.tile_a + 2 * e.slot_a;
            bmode[a0] = 2 * e.boundary_position;
            bmode[a0 + 1] = 2 * e.boundary_position + 1;
        }
    }

    DimerState out;
    out.num_modes = 2 * L;
    out.partner.assign(2 * L, -1);
    out.orient.assign(2 * L, 0);

    std::vector<char> visited(M, 0);

    // Trace chains from every boundary mode. A chain alternates tile dimers
    // and edge fusions; the endpoint arrow flips once per link traversed
    // against its own arrow.
    for (int p = 0; p < L; ++p) {
        const auto& e = g.edge(g.boundary_edge(p));
        for (int b = 0; b < 2; ++b) {
            const long start = 10L * e.tile_a + 2 * e.slot_a + b;
            if (visited[start])
                continue;
            long x = start;
            long reversals = 0;
            long end = -1;
            visited[x] = 1;
            while (true) {
                const long tile = x / 10;
                const int lm = static_cast<int>(x % 10);
                const DimerState& sd = seeds[logic[tile]];
                if (sd.orient[lm] < 0)
                    ++reversals;
                const long y = 10 * tile + sd.partner[lm];
                visited[y] = 1;
                if (bmode[y] >= 0) {
                    end = y;
                    break;
                }
                const long z = fuse[y];
                if (z < 0)
                    throw std::logic_error("contract: unfused interior mode");
                if (fuse_arrow[y] < 0)
                    ++reversals;
                visited[z] = 1;
                x = z;
            }
            const int gm = bmode[start];
            const int ge = bmode[end];
            out.partner[gm] = ge;
            out.partner[ge] = gm;
            out.orient[gm] = static_cast<signed char>(reversals % 2 == 0 ? +1 : -1);
            out.orient[ge] = static_cast<signed char>(-out.orient[gm]);
        }
    }

    // Remaining interior modes belong to closed loops.
    for (long m = 0; m < M; ++m) {
        if (visited[m])
            continue;
        if (bmode[m] >= 0)
            throw std::logic_error("contract: boundary mode missed by chain tracing");
        ++out.closed_loops;
        long x = m;
        while (!visited[x]) {
            visited[x] = 1;
            const long tile = x / 10;
            const long y = 10 * tile + seeds[logic[tile]].partner[x % 10];
            visited[y] = 1;
            x = fuse[y];
            if (x < 0)
                throw std::logic_error("contract: unfused interior mode in loop");
        }
    }

    return out;
}

double dimer_fidelity(const DimerState& s, int ell, int d, int window_start) {
    const int L = s.sites();
    if (ell < 1 || ell > L)
        throw std::invalid_argument("dimer_fidelity: window size out of range");
    if (d < 0 || d >= L)
        throw std::invalid_argument("dimer_fidelity: offset out of range");
    auto in_window = [&](int mode) {
        const int site = mode / 2;
        return ((site - window_start) % L + L) % L < ell;
    };
    long total = 0, matching = 0;
    for (int m = 0; m < s.num_modes; ++m) {
        const int q = s.partner[m];
        if (m >= q || !in_window(m) || !in_window(q))
            continue;
        ++total;
        const int mt = (m + 2 * d) % s.num_modes;
        const int qt = (q + 2 * d) % s.num_modes;
        if (s.partner[mt] == qt)
            ++matching;
    }
    return total == 0 ? 1.0 : static_cast<double>(matching) / static_cast<double>(total);
}

std::vector<long> correlation_histogram(const DimerState& s) {
    const int L = s.sites();
    std::vector<long> counts(L / 2 + 1, 0);
    for (int m = 0; m < s.num_modes; ++m) {
        const int q = s.partner[m];
        if (m >= q)
            continue;
        const int d = std::abs(m / 2 - q / 2);
        counts[std::min(d, L - d)]++;
    }
    return counts;
}

}  // namespace htn::dimers
