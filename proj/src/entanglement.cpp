#include "htn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "htn/disk_geometry.hpp"

namespace htn::entanglement {

namespace {

constexpr double kHalfLog2 = 0.34657359027997264;  // ln(2)/2

struct LineFit {
    double slope = 0.0, intercept = 0.0, residual = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    const double det = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}  // namespace

double entropy(const dimers::DimerState& s, tiling::Interval sites) {
    const int L = s.sites();
    if (sites.length < 0 || sites.length > L)
        throw std::invalid_argument("entropy: bad interval");
    long crossings = 0;
    for (int j = 0; j < sites.length; ++j) {
        const int site = ((sites.begin + j) % L + L) % L;
        for (int b = 0; b < 2; ++b) {
            const int q = s.partner[2 * site + b];
            const int qs = q / 2;
            if (((qs - sites.begin) % L + L) % L >= sites.length)
                ++crossings;
        }
    }
    return static_cast<double>(crossings) * kHalfLog2;
}

std::vector<double> entropy_by_position(const dimers::DimerState& s, int ell) {
    const int L = s.sites();
    if (ell < 0 || ell > L)
        throw std::invalid_argument("entropy_by_position: bad window");
    // cnt[d] = endpoints of dimer d inside the window, d keyed by min mode.
    std::vector<int> cnt(s.num_modes, 0);
    long crossing = 0;
    auto toggle = [&](int site, int delta) {
        for (int b = 0; b < 2; ++b) {
            const int m = 2 * site + b;
            const int d = std::min(m, s.partner[m]);
            const int before = cnt[d];
            cnt[d] += delta;
            crossing += (cnt[d] == 1) - (before == 1);
        }
    };
    for (int j = 0; j < ell; ++j)
        toggle(j, +1);
    std::vector<double> out(L);
    for (int pos = 0; pos < L; ++pos) {
        out[pos] = static_cast<double>(crossing) * kHalfLog2;
        if (pos + 1 < L) {
            toggle(pos, -1);
            toggle((pos + ell) % L, +1);
        }
    }
    return out;
}

EntropyProfile entropy_profile(const dimers::DimerState& s) {
    const int L = s.sites();
    EntropyProfile p;
    p.system_size = L;
    p.mean_nats.resize(L - 1);
    p.std_nats.resize(L - 1);
    for (int ell = 1; ell < L; ++ell) {
        const auto by_pos = entropy_by_position(s, ell);
        double mean = 0;
        for (double v : by_pos) mean += v;
        mean /= static_cast<double>(L);
        double var = 0;
        for (double v : by_pos) var += (v - mean) * (v - mean);
        p.mean_nats[ell - 1] = mean;
        p.std_nats[ell - 1] = std::sqrt(var / static_cast<double>(L));
    }
    return p;
}

CentralChargeFit fit_central_charge(const EntropyProfile& profile, int fit_lo, int fit_hi) {
    const int L = profile.system_size;
    if (fit_hi <= 0)
        fit_hi = L / 2;
    fit_lo = std::max(fit_lo, 1);
    fit_hi = std::min(fit_hi, L - 1);
    if (fit_hi - fit_lo + 1 < 5)
        throw std::invalid_argument("fit_central_charge: fit range has fewer than 5 points");

    std::vector<double> x, y;
    for (int ell = fit_lo; ell <= fit_hi; ++ell) {
        x.push_back(std::log(L / geometry::kPi * std::sin(geometry::kPi * ell / L)));
        y.push_back(profile.mean(ell));
    }
    const LineFit f = least_squares(x, y);
    CentralChargeFit fit;
    fit.c = 3.0 * f.slope;
    fit.intercept = f.intercept;
    fit.residual = f.residual;
    fit.fit_lo = fit_lo;
    fit.fit_hi = fit_hi;
    return fit;
}

RtReport rt_bound_check(const tiling::TilingGraph& g, const dimers::DimerState& s,
                        int chi, long region_budget) {
    if (chi < 2)
        throw std::invalid_argument("rt_bound_check: chi must be >= 2");
    const int L = g.boundary_length();
    if (s.sites() != L)
        throw std::invalid_argument("rt_bound_check: state does not match tiling boundary");
    const double log_chi = std::log(static_cast<double>(chi));

    RtReport report;
    report.exhaustive = static_cast<long>(L) * (L - 1) <= region_budget;

    auto check = [&](int pos, int ell, double S, int cut) {
        const double bound = cut * log_chi;
        report.max_ratio = std::max(report.max_ratio, S / bound);
        if (S > bound + 1e-9)
            report.violations.push_back({pos, ell});
        ++report.regions_checked;
    };

    if (report.exhaustive) {
        std::vector<std::vector<int>> dist(L);
        for (int p = 0; p < L; ++p)
            dist[p] = g.cut_distances_from(p);
        for (int ell = 1; ell < L; ++ell) {
            const auto S = entropy_by_position(s, ell);
            for (int pos = 0; pos < L; ++pos)
                check(pos, ell, S[pos], dist[pos][(pos + ell) % L]);
        }
    } else {
        // Deterministic grid: ~budget/100 geometric sizes x 100 positions.
        std::set<int> sizes;
        const int n_sizes = static_cast<int>(std::max<long>(region_budget / 100, 1));
        for (int i = 0; i < n_sizes; ++i) {
            const double t = static_cast<double>(i) / std::max(n_sizes - 1, 1);
            sizes.insert(std::max(1, static_cast<int>(std::lround(std::pow(L - 1.0, t)))));
        }
        std::vector<int> positions;
        for (int j = 0; j < 100; ++j)
            positions.push_back(static_cast<int>(static_cast<long>(j) * L / 100));
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        for (int pos : positions) {
            const auto dist = g.cut_distances_from(pos);
            for (int ell : sizes)
                check(pos, ell, entropy(s, {pos, ell}), dist[(pos + ell) % L]);
        }
    }
    return report;
}

CMaxReport c_max(const tiling::TilingGraph& g, int chi) {
    if (chi < 1)
        throw std::invalid_argument("c_max: chi must be >= 1");
    const int L = g.boundary_length();
    std::vector<double> mean_cut(L, 0.0);
    for (int p = 0; p < L; ++p) {
        const auto dist = g.cut_distances_from(p);
        for (int ell = 1; ell < L; ++ell)
            mean_cut[ell] += static_cast<double>(dist[(p + ell) % L]);
    }
    for (int ell = 1; ell < L; ++ell)
        mean_cut[ell] /= static_cast<double>(L);

    CMaxReport rep;
    // Mean cut length is symmetric under ell -> L - ell, so the ln(ell) growth
    // law only holds well below L/2; fit on [8, L/8].
    rep.fit_lo = 8;
    rep.fit_hi = L / 8;
    if (rep.fit_hi - rep.fit_lo + 1 < 5)
        throw std::invalid_argument("c_max: tiling too small to fit cut growth");
    std::vector<double> x, y;
    for (int ell = rep.fit_lo; ell <= rep.fit_hi; ++ell) {
        x.push_back(std::log(static_cast<double>(ell)));
        y.push_back(mean_cut[ell]);
    }
    const LineFit f = least_squares(x, y);
    rep.c_hat = f.slope;
    rep.residual = f.residual;
    rep.c_max = 3.0 * f.slope * std::log(static_cast<double>(chi));
    rep.s_over_alpha = geometry::edge_length({5, 4, 1.0});
    return rep;
}

}  // namespace htn::entanglement
