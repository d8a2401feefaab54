#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "htn/dimers.hpp"
#include "htn/entanglement.hpp"
#include "htn/tiling_graph.hpp"

#include "support/dense_sim.hpp"

using htn::dimers::DimerState;
using htn::dimers::contract;
using htn::dimers::seed_state;
using htn::tiling::Interval;
using htn::tiling::TilingGraph;
using namespace htn::entanglement;

namespace {

constexpr double kHalfLog2 = 0.34657359027997264;

DimerState rotate_state(const DimerState& s, int shift_sites) {
    DimerState out = s;
    const int N = s.num_modes;
    const int d = 2 * shift_sites;
    for (int m = 0; m < N; ++m) {
        out.partner[(m + d) % N] = (s.partner[m] + d) % N;
        out.orient[(m + d) % N] = s.orient[m];
    }
    return out;
}

}  // namespace

TEST_CASE("entropy basics on the seed state") {
    const auto seed = seed_state(0);
    CHECK(entropy(seed, {0, 5}) == doctest::Approx(0.0));
    CHECK(entropy(seed, {2, 0}) == doctest::Approx(0.0));
    // every single site has both modes paired outward
    for (int site = 0; site < 5; ++site)
        CHECK(entropy(seed, {site, 1}) == doctest::Approx(2 * kHalfLog2));
    // two adjacent sites: all four modes leave the region
    CHECK(entropy(seed, {0, 2}) == doctest::Approx(4 * kHalfLog2));
}

TEST_CASE("seed entropies match reduced density matrices of the code state") {
    const auto psi = oracle::five_qubit_code_state(0);
    const auto seed = seed_state(0);

    // single qubit: rho = (I + <X>X + <Y>Y + <Z>Z)/2
    for (int qubit = 0; qubit < 5; ++qubit) {
        double bloch2 = 0.0;
        for (char pauli : {'X', 'Y', 'Z'}) {
            const auto p = oracle::Pauli::single(qubit, pauli);
            const auto val = oracle::inner(psi, oracle::apply(p, 5, psi));
            bloch2 += val.real() * val.real() + val.imag() * val.imag();
        }
        const double bloch = std::sqrt(bloch2);
        const double lam = (1.0 + bloch) / 2.0;
        double s_dense = 0.0;
        for (double l : {lam, 1.0 - lam})
            if (l > 1e-15)
                s_dense -= l * std::log(l);
        CHECK(entropy(seed, {qubit, 1}) == doctest::Approx(s_dense).epsilon(1e-10));
    }

    // two adjacent qubits: purity fixes the spectrum of the 4x4 block
    double purity = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            oracle::cplx rho_ab{0, 0};
            for (int rest = 0; rest < 8; ++rest)
                rho_ab += psi[a | (rest << 2)] * std::conj(psi[b | (rest << 2)]);
            purity += std::norm(rho_ab);
        }
    CHECK(purity == doctest::Approx(0.25).epsilon(1e-12));  // maximally mixed
    CHECK(entropy(seed, {0, 2}) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("complement symmetry, exhaustive at small steps") {
    for (int steps : {1, 2, 3}) {
        const auto g = TilingGraph::build(steps);
        const auto st = contract(g);
        const int L = st.sites();
        for (int ell = 1; ell < L; ++ell) {
            const auto s_ell = entropy_by_position(st, ell);
            const auto s_comp = entropy_by_position(st, L - ell);
            for (int pos = 0; pos < L; ++pos)
                CHECK(s_ell[pos] == doctest::Approx(s_comp[(pos + ell) % L]).epsilon(1e-12));
        }
    }
}

TEST_CASE("entropy is an integer multiple of half log 2") {
    const auto g = TilingGraph::build(3);
    const auto st = contract(g);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int pos = static_cast<int>(rng() % st.sites());
        const int len = static_cast<int>(rng() % st.sites());
        const double s = entropy(st, {pos, len});
        const double q = s / kHalfLog2;
        CHECK(std::abs(q - std::lround(q)) < 1e-9);
    }
}

TEST_CASE("subadditivity for adjacent disjoint regions") {
    const auto g = TilingGraph::build(3);
    const auto st = contract(g);
    const int L = st.sites();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int pos = static_cast<int>(rng() % L);
        const int la = 1 + static_cast<int>(rng() % (L / 3));
        const int lb = 1 + static_cast<int>(rng() % (L / 3));
        const double s_union = entropy(st, {pos, la + lb});
        const double s_a = entropy(st, {pos, la});
        const double s_b = entropy(st, {(pos + la) % L, lb});
        CHECK(s_union <= s_a + s_b + 1e-12);
    }
}

TEST_CASE("sliding-window entropies agree with direct counting") {
    const auto g = TilingGraph::build(2);
    const auto st = contract(g);
    const int L = st.sites();
    for (int ell : {1, 3, 17, 60, 94}) {
        const auto windows = entropy_by_position(st, ell);
        for (int pos = 0; pos < L; pos += 7)
            CHECK(windows[pos] == doctest::Approx(entropy(st, {pos, ell})).epsilon(1e-12));
    }
}

TEST_CASE("minimal-cut bound holds for every region at small steps") {
    for (int steps : {1, 2, 3}) {
        const auto g = TilingGraph::build(steps);
        const auto st = contract(g);
        const auto report = rt_bound_check(g, st, 2);
        CHECK(report.exhaustive);
        CHECK(report.regions_checked ==
              static_cast<long>(st.sites()) * (st.sites() - 1));
        CHECK(report.violations.empty());
        CHECK(report.max_ratio <= 1.0 + 1e-12);
        if (steps == 2)
            CHECK(report.max_ratio == doctest::Approx(1.0));  // some region saturates
    }
}

TEST_CASE("central charge fit recovers a synthetic chord profile") {
    EntropyProfile p;
    p.system_size = 400;
    const double c0 = 3.21;
    for (int ell = 1; ell < 400; ++ell) {
        const double x = std::log(400.0 / M_PI * std::sin(M_PI * ell / 400.0));
        p.mean_nats.push_back(c0 / 3.0 * x + 0.717);
        p.std_nats.push_back(0.0);
    }
    const auto fit = fit_central_charge(p);
    CHECK(fit.c == doctest::Approx(c0).epsilon(1e-10));
    CHECK(fit.intercept == doctest::Approx(0.717).epsilon(1e-10));
    CHECK(fit.residual < 1e-10);

    // flat profile has zero slope
    EntropyProfile flat;
    flat.system_size = 400;
    flat.mean_nats.assign(399, 1.5);
    flat.std_nats.assign(399, 0.0);
    CHECK(fit_central_charge(flat).c == doctest::Approx(0.0).epsilon(1e-12));

    EntropyProfile tiny;
    tiny.system_size = 12;
    tiny.mean_nats.assign(11, 1.0);
    tiny.std_nats.assign(11, 0.0);
    CHECK_THROWS_AS(fit_central_charge(tiny, 5, 6), std::invalid_argument);
}

TEST_CASE("fitted central charge sits near the closed-form value") {
    const auto g = TilingGraph::build(4);
    const auto st = contract(g);
    const auto profile = entropy_profile(st);
    const auto fit = fit_central_charge(profile);
    const double reference = 9.0 * std::log(2.0) / std::log(2.0 + std::sqrt(3.0));
    CHECK(std::abs(fit.c - reference) / reference < 0.10);

    // position averaging makes the fit anchor independent
    const auto rotated = entropy_profile(rotate_state(st, 137));
    const auto fit2 = fit_central_charge(rotated);
    CHECK(fit2.c == doctest::Approx(fit.c).epsilon(1e-12));
}

TEST_CASE("c_max scaling in chi and the discrete bound") {
    const auto g = TilingGraph::build(4);
    const auto cm1 = c_max(g, 1);
    CHECK(cm1.c_max == doctest::Approx(0.0));
    const auto cm2 = c_max(g, 2);
    const auto cm4 = c_max(g, 4);
    CHECK(cm4.c_max == doctest::Approx(2.0 * cm2.c_max).epsilon(1e-12));
    CHECK(cm2.s_over_alpha == doctest::Approx(1.061275).epsilon(1e-6));

    const double reference = 9.0 * std::log(2.0) / std::log(2.0 + std::sqrt(3.0));
    CHECK(cm2.c_max >= reference);

    const auto st = contract(g);
    const auto fit = fit_central_charge(entropy_profile(st));
    CHECK(fit.c <= cm2.c_max);
}

TEST_CASE("each inflation step adds 3 log 2 of entropy at fixed relative scale") {
    // Fit-free route to the effective central charge: the position-averaged
    // entropy of an L/5 window gains (c/3) ln(lambda) = 3 ln 2 per step.
    const double target = 3.0 * std::log(2.0);
    double prev = 0.0, prev_err = 1.0;
    for (int steps = 1; steps <= 5; ++steps) {
        const auto g = TilingGraph::build(steps);
        const auto st = contract(g);
        const int L = st.sites();
        const auto s = entropy_by_position(st, L / 5);
        double mean = 0.0;
        for (double v : s)
            mean += v;
        mean /= L;
        if (steps > 1) {
            const double err = std::abs(mean - prev - target);
            CHECK(err < prev_err);  // converges monotonically
            prev_err = err;
        }
        prev = mean;
    }
    CHECK(prev_err < 1e-4);
}

TEST_CASE("rt_bound_check input validation") {
    const auto g = TilingGraph::build(1);
    const auto st = contract(g);
    CHECK_THROWS_AS(rt_bound_check(g, st, 1), std::invalid_argument);
    const auto g2 = TilingGraph::build(2);
    CHECK_THROWS_AS(rt_bound_check(g2, st, 2), std::invalid_argument);
}
