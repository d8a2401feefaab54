#pragma once

#include <vector>

#include "htn/dimers.hpp"
#include "htn/tiling_graph.hpp"

namespace htn::entanglement {

// Entanglement entropy in nats of a contiguous site interval: half a ln 2
// per dimer crossing the interval boundary.
double entropy(const dimers::DimerState& s, tiling::Interval sites);

// S(pos, ell) for every window position, computed with a sliding window.
std::vector<double> entropy_by_position(const dimers::DimerState& s, int ell);

struct EntropyProfile {
    int system_size = 0;
    std::vector<double> mean_nats;  // index ell = 1 .. L-1 (entry ell-1)
    std::vector<double> std_nats;

    double mean(int ell) const { return mean_nats[ell - 1]; }
};

// Position-averaged entropies for every subsystem size.
EntropyProfile entropy_profile(const dimers::DimerState& s);

struct CentralChargeFit {
    double c = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms deviation over the fit range
    int fit_lo = 0;
    int fit_hi = 0;
};

// Least-squares fit of mean S(ell) to (c/3) ln[(L/pi) sin(pi ell/L)] + const.
// fit_hi <= 0 selects L/2. Throws when fewer than 5 points are in range.
CentralChargeFit fit_central_charge(const EntropyProfile& profile, int fit_lo = 8,
                                    int fit_hi = 0);

struct RtReport {
    long regions_checked = 0;
    bool exhaustive = false;
    double max_ratio = 0.0;  // max S / (cut ln chi)
    std::vector<tiling::Interval> violations;
};

// Checks S(region) <= cut_edges(region) ln chi for every contiguous region
// (exhaustively when the region count fits the budget, otherwise over a
// deterministic grid of positions and sizes).
RtReport rt_bound_check(const tiling::TilingGraph& g, const dimers::DimerState& s,
                        int chi = 2, long region_budget = 126000);

struct CMaxReport {
    double c_hat = 0.0;      // slope of mean cut_edges(ell) vs ln ell
    double c_max = 0.0;      // 3 c_hat ln chi
    double s_over_alpha = 0.0;
    double residual = 0.0;
    int fit_lo = 0;
    int fit_hi = 0;
};

// Discrete Brown-Henneaux bound from the growth of position-averaged minimal
// cuts, reported alongside the edge length s/alpha.
CMaxReport c_max(const tiling::TilingGraph& g, int chi);

}  // namespace htn::entanglement
