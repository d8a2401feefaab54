#pragma once

#include <vector>

#include "htn/tiling_graph.hpp"

namespace htn::dimers {

// Perfect matching on Majorana modes with per-dimer arrows. orient[m] is the
// sign of the covariance entry between m and partner[m]; +1 means the arrow
// points from m to its partner.
struct DimerState {
    int num_modes = 0;
    std::vector<int> partner;
    std::vector<signed char> orient;
    long closed_loops = 0;

    int sites() const { return num_modes / 2; }
};

// Dimer pattern of the five-qubit code state |0bar> (logical=0) or |1bar> on
// 10 modes, two per pentagon edge in cycle order: mode j pairs with j+5.
// Orientations follow the covariance matrix of the code space built from the
// cyclic XZZXI stabilizers under the Jordan-Wigner convention.
DimerState seed_state(int logical);

// Contracts the pentagon-code network on the patch: one code tile per tile,
// interior edges fused mode-pairwise in reversed order, dimer chains traced
// end to end. Returns the boundary state on 2L modes, site j = boundary edge
// j. Closed interior loops are counted and dropped. `logical` maps tile id to
// 0/1; empty means all zeros.
DimerState contract(const tiling::TilingGraph& g, const std::vector<int>& logical = {});

// Fraction of dimers with both endpoint sites inside the ell-site window
// starting at window_start whose translate by d sites is again a dimer.
// Vacuously 1 when the window contains no complete dimer.
double dimer_fidelity(const DimerState& s, int ell, int d, int window_start = 0);

// counts[d] = number of dimers whose endpoint sites lie d sites apart
// (cyclic distance, d = 0 .. L/2).
std::vector<long> correlation_histogram(const DimerState& s);

}  // namespace htn::dimers
