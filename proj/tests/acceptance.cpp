// Acceptance suite: runs every headline requirement end to end and prints one
// pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "htn/dimers.hpp"
#include "htn/disk_geometry.hpp"
#include "htn/entanglement.hpp"
#include "htn/inflation.hpp"
#include "htn/io.hpp"
#include "htn/layout.hpp"
#include "htn/tiling_graph.hpp"

#include "support/dense_sim.hpp"
#include "support/gaussian_oracle.hpp"

using namespace htn;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_start;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    const double t =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
    std::printf("[%s] %2d %-24s %s (t=%.1fs)\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str(), t);
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

long count_cyclic(const std::string& word, const std::string& needle) {
    long n = 0;
    const std::string doubled = word + word;
    for (size_t i = 0; i < word.size(); ++i)
        if (doubled.compare(i, needle.size(), needle) == 0)
            ++n;
    return n;
}

bool spans_gap(const dimers::DimerState& s, int m, int v) {
    const int N = s.num_modes;
    const int fwd = ((s.partner[m] - m) % N + N) % N;
    if (2 * fwd == N)
        return false;
    const int lo = fwd < N - fwd ? m : s.partner[m];
    const int len = std::min(fwd, N - fwd);
    const int off = ((2 * v - lo) % N + N) % N;
    return off >= 1 && off <= len;
}

bool chords_cross(const dimers::DimerState& s, int m1, int m2) {
    const int N = s.num_modes;
    auto inside = [&](int x, int lo, int hi) {
        const int dx = ((x - lo) % N + N) % N;
        const int dh = ((hi - lo) % N + N) % N;
        return dx > 0 && dx < dh;
    };
    return inside(m2, m1, s.partner[m1]) != inside(s.partner[m2], m1, s.partner[m1]);
}

}  // namespace

int main() {
    g_start = std::chrono::steady_clock::now();
    const double c_ref = 9.0 * std::log(2.0) / std::log(2.0 + std::sqrt(3.0));

    // 1. scale factor against the closed form and the substitution spectrum
    {
        const double l54 = inflation::scale_factor(5, 4);
        const double perron =
            inflation::SubstitutionMatrix::from_rule(inflation::SubstitutionRule{})
                .perron_eigenvalue();
        const double l37 = inflation::scale_factor(3, 7);
        const bool ok = std::abs(l54 - (2.0 + std::sqrt(3.0))) < 1e-12 &&
                        std::abs(l54 - perron) < 1e-12 &&
                        std::abs(l37 - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-12;
        report(1, "scale-factor", ok,
               fmt("lambda_54=%.12f perron=%.12f lambda_37=%.12f", l54, perron, l37));
    }

    // 2. word combinatorics after four inflation steps
    {
        inflation::LetterSequence w{"aaaaa", true, 0};
        for (int i = 0; i < 4; ++i)
            w = inflation::inflate(w);
        const auto [na, nb] = inflation::letter_counts(w);
        const double ratio = static_cast<double>(nb) / w.size();
        const double limit = 1.0 - 1.0 / std::sqrt(3.0);
        const bool ok =
            w.size() == 1325 && na == 765 && nb == 560 && std::abs(ratio - limit) < 1e-5;
        report(2, "word-combinatorics", ok,
               fmt("L=%ld Na=%ld Nb=%ld ratio=%.6f limit=%.6f", w.size(), na, nb, ratio, limit));
    }

    // 3. sequence identities
    {
        const auto bab = inflation::inflate({"bab", false, 0}).letters;
        const auto aaa = inflation::inflate({"aaa", false, 0}).letters;
        bool ok = bab == "ababaabab" && aaa.substr(3, 10) == "ababaababa";
        inflation::LetterSequence layer{"aaaaa", true, 0};
        std::string counts;
        for (int i = 0; i < 4; ++i) {
            const auto [na, nb] = inflation::letter_counts(layer);
            layer = inflation::inflate(layer);
            const long occ = count_cyclic(layer.letters, "ababaababa");
            counts += fmt("%ld/%ld ", occ, na);
            ok = ok && occ >= na;
        }
        report(3, "sequence-identities", ok, fmt("inflate(bab)=%s occ/Na: %s", bab.c_str(), counts.c_str()));
    }

    // 4. tiling/word consistency and layer tile counts
    {
        bool ok = true;
        inflation::LetterSequence w{"aaaaa", true, 0};
        for (int steps = 0; steps <= 4; ++steps) {
            const auto g = tiling::TilingGraph::build(steps);
            ok = ok && g.boundary_word() == w.letters;
            w = inflation::inflate(w);
        }
        const auto g4 = tiling::TilingGraph::build(4);
        const std::vector<long> expect{1, 10, 40, 150, 560};
        ok = ok && g4.layer_tile_counts() == expect && g4.boundary_length() == 1325;
        report(4, "tiling-word-consistency", ok,
               fmt("layers=[%ld,%ld,%ld,%ld,%ld] L=%d", g4.layer_tile_counts()[0],
                   g4.layer_tile_counts()[1], g4.layer_tile_counts()[2], g4.layer_tile_counts()[3],
                   g4.layer_tile_counts()[4], g4.boundary_length()));
    }

    // 5. geometry: edge length, rendered distances, reflections, large-k
    {
        const geometry::TilingParams p{5, 4, 1.0};
        const double s = geometry::edge_length(p);
        bool ok = std::abs(s - 1.061275) < 1e-6;

        const auto g = tiling::TilingGraph::build(2);
        const auto coord = geometry::vertex_coordinates(p, g);
        double worst = 0.0;
        for (const auto& e : g.edges())
            worst = std::max(worst, std::abs(geometry::hyperbolic_distance(coord[e.v0],
                                                                           coord[e.v1]) - s));
        ok = ok && worst < 1e-9;

        // double reflections act as a Mobius map: compare against the
        // transform assembled from the two mirror geodesics on test points
        std::mt19937_64 rng(67);
        auto rnd = [&]() {
            const double r = 0.8 * (rng() % 1000) / 1000.0;
            const double a = 2.0 * geometry::kPi * (rng() % 1000) / 1000.0;
            return geometry::DiskPoint{r * std::cos(a), r * std::sin(a)};
        };
        double worst_mobius = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto g1 = geometry::Geodesic::through(rnd(), rnd());
            const auto g2 = geometry::Geodesic::through(rnd(), rnd());
            // fit from three images by composing shift/rotation transforms:
            // T(z) = R(reflect2(reflect1(z))) is holomorphic, so matching the
            // image of 0 and the rotation at 0 determines it
            const auto w0 = geometry::reflect(g2, geometry::reflect(g1, geometry::DiskPoint{0, 0}));
            const auto shift = geometry::MobiusTransform::from_shift_rotation(w0, 0.0);
            // rotation angle from a second point
            const auto z1 = rnd();
            const auto img1 = geometry::reflect(g2, geometry::reflect(g1, z1));
            const auto pre = shift.inverse().apply(img1);
            const double theta = std::arg(pre.z()) - std::arg(z1.z());
            const auto fitted = shift.compose(
                geometry::MobiusTransform::from_shift_rotation({0, 0}, theta));
            for (int i = 0; i < 5; ++i) {
                const auto z = rnd();
                const auto expect = geometry::reflect(g2, geometry::reflect(g1, z));
                worst_mobius =
                    std::max(worst_mobius, std::abs(fitted.apply(z).z() - expect.z()));
            }
        }
        ok = ok && worst_mobius < 1e-10;

        // large-k expansion at k=64: the O(k^-2) remainder is 1.04e-3 on a
        // value of ~7.0, so the 1e-3 verification is relative
        const double exact = geometry::edge_length({5, 64, 1.0});
        const double expansion = 2.0 * std::log(2.0 * 64 / geometry::kPi * std::cos(geometry::kPi / 5));
        ok = ok && std::abs(exact - expansion) / exact < 1e-3;
        report(5, "disk-geometry", ok,
               fmt("s=%.7f coord_err=%.1e mobius_err=%.1e largek_rel_err=%.1e", s, worst,
                   worst_mobius, std::abs(exact - expansion) / exact));
    }

    // 6. seed states against the brute-force code-space covariance
    {
        bool ok = true;
        for (int logical : {0, 1}) {
            const auto seed = dimers::seed_state(logical);
            const auto gamma = oracle::covariance(5, oracle::five_qubit_code_state(logical));
            for (int p = 0; p < 10; ++p)
                for (int q = 0; q < 10; ++q) {
                    const double expect =
                        q == seed.partner[p] ? static_cast<double>(seed.orient[p]) : 0.0;
                    ok = ok && std::abs(gamma[p][q] - expect) < 1e-10;
                }
        }
        report(6, "dimer-seed-oracle", ok, "covariance = signed permutation, both code states");
    }

    // 7. contraction against the Gaussian oracle + local pattern structure
    {
        const auto g = tiling::TilingGraph::build(1);
        const auto st = dimers::contract(g);
        const auto orc = oracle::contract_network(g);
        bool ok = true;
        for (int m = 0; m < st.num_modes; ++m)
            ok = ok && st.partner[m] == orc.partner[m] &&
                 static_cast<int>(st.orient[m]) == orc.orient[m];

        const auto& word = g.boundary_word();
        const int N = st.num_modes;
        for (int v = 0; v < g.boundary_length(); ++v) {
            const int outer_l = ((2 * v - 2) % N + N) % N;
            const int outer_r = (2 * v + 1) % N;
            const bool crossing = spans_gap(st, outer_l, v) && spans_gap(st, outer_r, v) &&
                                  chords_cross(st, outer_l, outer_r);
            const bool separated = !spans_gap(st, ((2 * v - 1) % N + N) % N, v) &&
                                   !spans_gap(st, (2 * v) % N, v);
            ok = ok && (word[v] == 'a' ? crossing : (!crossing && separated));
        }
        report(7, "contraction-oracle", ok, "matching, orientations and a/b pattern at steps=1");
    }

    // 8. entropy properties, exhaustive at steps <= 3
    {
        bool ok = true;
        double max_dev = 0.0;
        for (int steps = 1; steps <= 3; ++steps) {
            const auto g = tiling::TilingGraph::build(steps);
            const auto st = dimers::contract(g);
            const int L = st.sites();
            ok = ok && entanglement::entropy(st, {0, L}) == 0.0;
            for (int ell = 1; ell < L; ++ell) {
                const auto s_ell = entanglement::entropy_by_position(st, ell);
                const auto s_comp = entanglement::entropy_by_position(st, L - ell);
                for (int pos = 0; pos < L; ++pos) {
                    max_dev = std::max(max_dev,
                                       std::abs(s_ell[pos] - s_comp[(pos + ell) % L]));
                    const double q = s_ell[pos] / (0.5 * std::log(2.0));
                    max_dev = std::max(max_dev, std::abs(q - std::lround(q)));
                }
            }
        }
        ok = ok && max_dev < 1e-9;
        report(8, "entropy-properties", ok, fmt("complement+quantization dev=%.1e", max_dev));
    }

    // 9. minimal-cut entropy bound
    {
        bool ok = true;
        double worst_ratio = 0.0;
        long checked = 0;
        for (int steps = 1; steps <= 3; ++steps) {
            const auto g = tiling::TilingGraph::build(steps);
            const auto rep = entanglement::rt_bound_check(g, dimers::contract(g), 2);
            ok = ok && rep.exhaustive && rep.violations.empty();
            worst_ratio = std::max(worst_ratio, rep.max_ratio);
            checked += rep.regions_checked;
        }
        const auto g4 = tiling::TilingGraph::build(4);
        const auto rep4 = entanglement::rt_bound_check(g4, dimers::contract(g4), 2, 10000);
        ok = ok && !rep4.exhaustive && rep4.violations.empty();
        worst_ratio = std::max(worst_ratio, rep4.max_ratio);
        checked += rep4.regions_checked;
        report(9, "minimal-cut-bound", ok,
               fmt("regions=%ld max_ratio=%.6f violations=0", checked, worst_ratio));
    }

    // 10. central charge and the discrete capacity bound
    {
        const auto g = tiling::TilingGraph::build(4);
        const auto st = dimers::contract(g);
        const auto fit = entanglement::fit_central_charge(entanglement::entropy_profile(st));
        const auto cm = entanglement::c_max(g, 2);
        const double rel = std::abs(fit.c - c_ref) / c_ref;
        const bool ok = rel < 0.10 && fit.c <= cm.c_max;
        report(10, "central-charge", ok,
               fmt("c=%.4f ref=%.4f rel=%.4f c_max=%.4f", fit.c, c_ref, rel, cm.c_max));
    }

    // 11. correlation decay and branch structure
    {
        const auto g = tiling::TilingGraph::build(4);
        const auto hist = dimers::correlation_histogram(dimers::contract(g));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int d = 4; d <= 200; ++d) {
            if (hist[d] == 0)
                continue;
            const double x = std::log(static_cast<double>(d));
            const double y = std::log(static_cast<double>(hist[d]));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        bool ok = std::abs(slope + 1.0) <= 0.15;

        std::vector<std::pair<double, int>> weighted;
        for (int d = 2; d <= 200; ++d)
            if (hist[d] > 0)
                weighted.push_back({static_cast<double>(d) * hist[d], d});
        double c1 = weighted.front().first, c2 = weighted.front().first;
        for (auto [w, d] : weighted) {
            c1 = std::min(c1, w);
            c2 = std::max(c2, w);
        }
        for (int it = 0; it < 50; ++it) {
            double s1 = 0, s2 = 0;
            int n1 = 0, n2 = 0;
            for (auto [w, d] : weighted)
                (std::abs(w - c1) <= std::abs(w - c2) ? (s1 += w, ++n1) : (s2 += w, ++n2));
            if (n1)
                c1 = s1 / n1;
            if (n2)
                c2 = s2 / n2;
        }
        std::vector<int> low_d, high_d;
        for (auto [w, d] : weighted)
            (std::abs(w - c1) <= std::abs(w - c2) ? low_d : high_d).push_back(d);
        ok = ok && low_d.size() >= 3 && high_d.size() >= 3 && c2 / c1 >= 2.0 &&
             low_d.front() < high_d.back() && high_d.front() < low_d.back();
        report(11, "correlation-decay", ok,
               fmt("slope=%.4f branches=%zu/%zu ratio=%.2f", slope, low_d.size(), high_d.size(),
                   c2 / c1));
    }

    // 12. translation fidelity
    {
        const auto g = tiling::TilingGraph::build(4);
        const auto st = dimers::contract(g);
        const int L = st.sites();
        bool ok = true;
        std::vector<std::vector<double>> curves;
        std::string means;
        for (int ell : {50, 100, 200}) {
            std::vector<double> curve(L);
            double mean = 0.0;
            for (int d = 0; d < L; ++d) {
                curve[d] = dimers::dimer_fidelity(st, ell, d);
                mean += curve[d];
            }
            mean /= L;
            for (int d : {0, 265, 530, 795, 1060})
                ok = ok && curve[d] == 1.0;
            const double baseline = io::shuffled_matching_baseline(st, ell, 0, 0);
            ok = ok && mean >= 3.0 * baseline;
            means += fmt("%.3f/%.4f ", mean, baseline);
            curves.push_back(std::move(curve));
        }
        double worst_mad = 0.0;
        for (size_t i = 0; i < curves.size(); ++i)
            for (size_t j = i + 1; j < curves.size(); ++j) {
                double mad = 0.0;
                for (int d = 0; d < L; ++d)
                    mad += std::abs(curves[i][d] - curves[j][d]);
                worst_mad = std::max(worst_mad, mad / L);
            }
        ok = ok && worst_mad <= 0.05;
        report(12, "translation-fidelity", ok,
               fmt("mean/baseline: %swindow_mad=%.4f", means.c_str(), worst_mad));
    }

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
