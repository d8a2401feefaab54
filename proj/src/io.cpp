#include "htn/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "htn/disk_geometry.hpp"
#include "htn/inflation.hpp"
#include "htn/layout.hpp"

namespace htn::io {

using nlohmann::json;
namespace fs = std::filesystem;

double sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
    return fs::path(cfg.out_dir) / name;
}

bool wants(const RunConfig& cfg, const std::string& fmt) {
    for (const auto& f : cfg.formats)
        if (f == fmt)
            return true;
    return false;
}

int check_config(const RunConfig& cfg, bool needs_rule) {
    if (cfg.n < 3 || cfg.k < 3) {
        std::fprintf(stderr, "error: invalid tiling {%d,%d}\n", cfg.n, cfg.k);
        return 1;
    }
    if (cfg.steps < 0) {
        std::fprintf(stderr, "error: steps must be >= 0\n");
        return 1;
    }
    if (cfg.steps > 6 && !cfg.allow_large) {
        std::fprintf(stderr, "error: steps > 6 needs --allow-large\n");
        return 1;
    }
    if (needs_rule && !(cfg.n == 5 && cfg.k == 4)) {
        std::fprintf(stderr, "error: tiling construction is implemented for {5,4} only\n");
        return 1;
    }
    return 0;
}

std::vector<int> logical_inputs(const RunConfig& cfg, const tiling::TilingGraph& g) {
    std::vector<int> logic(g.tile_count(), 0);
    if (cfg.logical == "all0")
        return logic;
    if (cfg.logical == "all1") {
        std::fill(logic.begin(), logic.end(), 1);
        return logic;
    }
    if (cfg.logical.rfind("file:", 0) == 0) {
        std::ifstream in(cfg.logical.substr(5));
        if (!in)
            throw std::runtime_error("cannot read logical input file");
        for (int& v : logic)
            if (!(in >> v) || (v != 0 && v != 1))
                throw std::runtime_error("logical input file must list one 0/1 per tile");
        return logic;
    }
    throw std::runtime_error("logical input must be all0, all1 or file:<path>");
}

dimers::DimerState rotate_state(const dimers::DimerState& state, int shift_sites) {
    const int L = state.sites();
    const int shift = ((shift_sites % L) + L) % L;
    if (shift == 0)
        return state;
    dimers::DimerState rotated = state;
    for (int m = 0; m < state.num_modes; ++m) {
        const int mm = (m + 2 * shift) % state.num_modes;
        rotated.partner[mm] = (state.partner[m] + 2 * shift) % state.num_modes;
        rotated.orient[mm] = state.orient[m];
    }
    return rotated;
}

// Boundary state in reporting coordinates (anchor rotated by seed_anchor).
dimers::DimerState contract_for(const RunConfig& cfg, const tiling::TilingGraph& g) {
    return rotate_state(dimers::contract(g, logical_inputs(cfg, g)), cfg.seed_anchor);
}

}  // namespace

std::string tiling_json(const tiling::TilingGraph& g) {
    json j;
    j["schema"] = 1;
    j["steps"] = g.steps();
    j["boundary_word"] = g.boundary_word();
    j["layer_tile_counts"] = g.layer_tile_counts();
    json tiles = json::array();
    for (const auto& t : g.tiles())
        tiles.push_back({{"id", t.id},
                         {"layer", t.layer},
                         {"edges", t.edges},
                         {"vertices", t.vertices}});
    j["tiles"] = std::move(tiles);
    json edges = json::array();
    for (const auto& e : g.edges()) {
        json je = {{"id", e.id}, {"vertices", {e.v0, e.v1}}};
        je["tiles"] = e.interior() ? json{e.tile_a, e.tile_b} : json{e.tile_a};
        if (e.boundary_position >= 0)
            je["boundary_position"] = e.boundary_position;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

std::string dimer_state_json(const dimers::DimerState& s) {
    json j;
    j["schema"] = 1;
    j["num_modes"] = s.num_modes;
    j["closed_loops"] = s.closed_loops;
    json dimers = json::array();
    for (int m = 0; m < s.num_modes; ++m)
        if (m < s.partner[m])
            dimers.push_back({m, s.partner[m], static_cast<int>(s.orient[m])});
    j["dimers"] = std::move(dimers);
    return j.dump(2) + "\n";
}

namespace {

struct SvgCanvas {
    std::string body;

    static std::string pt(geometry::DiskPoint p) {
        // y flipped: math orientation -> svg pixel orientation
        return fmt12(p.re) + " " + fmt12(-p.im);
    }

    void geodesic_path(geometry::DiskPoint a, geometry::DiskPoint b, std::string& d) const {
        using geometry::Geodesic;
        const Geodesic g = Geodesic::through(a, b);
        if (g.kind == Geodesic::Kind::diameter) {
            d += " L " + pt(b);
            return;
        }
        const double cross = (a.re - g.center.real()) * (b.im - g.center.imag()) -
                             (a.im - g.center.imag()) * (b.re - g.center.real());
        // sweep flag in flipped-y coordinates
        const char* sweep = cross > 0 ? "0" : "1";
        d += " A " + fmt12(g.radius) + " " + fmt12(g.radius) + " 0 0 " + std::string(sweep) +
             " " + pt(b);
    }
};

const char* kLayerFill[] = {"#4c78a8", "#9ecae9", "#f58518", "#ffbf79",
                            "#54a24b", "#88d27a", "#b79a20"};

}  // namespace

std::string tiling_svg(const tiling::TilingGraph& g, double alpha) {
    const geometry::TilingParams params{5, 4, alpha};
    const auto coord = geometry::vertex_coordinates(params, g);
    SvgCanvas canvas;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
    out += "<metadata>{\"schema\":1,\"tiles\":" + std::to_string(g.tile_count()) +
           ",\"edges\":" + std::to_string(g.edge_count()) +
           ",\"boundary\":" + std::to_string(g.boundary_length()) +
           ",\"steps\":" + std::to_string(g.steps()) + "}</metadata>\n";
    out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"white\" stroke=\"#333\" stroke-width=\"0.004\"/>\n";
    for (const auto& t : g.tiles()) {
        std::string d = "M " + SvgCanvas::pt(coord[t.vertices[0]]);
        for (int j = 0; j < 5; ++j)
            canvas.geodesic_path(coord[t.vertices[j]], coord[t.vertices[(j + 1) % 5]], d);
        d += " Z";
        out += "<path d=\"" + d + "\" fill=\"" + kLayerFill[t.layer % 7] +
               "\" fill-opacity=\"0.55\" stroke=\"#222\" stroke-width=\"0.003\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string dimer_svg(const tiling::TilingGraph& g, const dimers::DimerState& s, double alpha) {
    const geometry::TilingParams params{5, 4, alpha};
    const auto coord = geometry::vertex_coordinates(params, g);
    const int L = g.boundary_length();

    // Boundary mode anchors: the two modes of site j sit at 1/3 and 2/3 along
    // its edge, in walk order.
    std::vector<geometry::DiskPoint> mode_pt(2 * L);
    for (int p = 0; p < L; ++p) {
        const geometry::DiskPoint a = coord[g.boundary_vertex(p)];
        const geometry::DiskPoint b = coord[g.boundary_vertex(p + 1)];
        mode_pt[2 * p] = {a.re + (b.re - a.re) / 3.0, a.im + (b.im - a.im) / 3.0};
        mode_pt[2 * p + 1] = {a.re + 2.0 * (b.re - a.re) / 3.0, a.im + 2.0 * (b.im - a.im) / 3.0};
    }

    std::string out = tiling_svg(g, alpha);
    out.erase(out.rfind("</svg>"));
    std::string loops = std::to_string(s.closed_loops);
    out += "<g id=\"dimers\" data-loops=\"" + loops + "\">\n";
    for (int m = 0; m < s.num_modes; ++m) {
        if (m >= s.partner[m])
            continue;
        out += "<line x1=\"" + fmt12(mode_pt[m].re) + "\" y1=\"" + fmt12(-mode_pt[m].im) +
               "\" x2=\"" + fmt12(mode_pt[s.partner[m]].re) + "\" y2=\"" +
               fmt12(-mode_pt[s.partner[m]].im) +
               "\" stroke=\"#c22\" stroke-width=\"0.0035\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

double shuffled_matching_baseline(const dimers::DimerState& s, int ell, int window_start,
                                  unsigned long rng_seed, int samples) {
    const int L = s.sites();
    std::vector<int> modes;
    for (int j = 0; j < ell; ++j) {
        const int site = ((window_start + j) % L + L) % L;
        modes.push_back(2 * site);
        modes.push_back(2 * site + 1);
    }
    std::mt19937_64 rng(rng_seed);
    double acc = 0.0;
    std::vector<int> pool = modes;
    for (int it = 0; it < samples; ++it) {
        for (size_t i = pool.size(); i > 1; --i) {
            std::uniform_int_distribution<size_t> pick(0, i - 1);
            std::swap(pool[pick(rng)], pool[i - 1]);
        }
        long match = 0;
        const long pairs = static_cast<long>(pool.size() / 2);
        for (long p = 0; p < pairs; ++p)
            if (s.partner[pool[2 * p]] == pool[2 * p + 1])
                ++match;
        acc += static_cast<double>(match) / static_cast<double>(pairs);
    }
    return acc / samples;
}


// Commands own the exit-code contract: configuration and I/O problems are
// reported on stderr and mapped to exit code 1.
template <typename Body>
int guarded(Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_inflate(const RunConfig& cfg) {
    return guarded([&]() -> int {
        if (int rc = check_config(cfg, false))
            return rc;
        using namespace inflation;

        json j;
        j["schema"] = 1;
        j["tiling"] = {cfg.n, cfg.k};
        j["steps"] = cfg.steps;
        const int f = cfg.n * cfg.k - 2 * (cfg.n + cfg.k);
        j["f"] = f;
        if (f < 0) {
            std::fprintf(stderr, "error: {%d,%d} is spherical (f < 0)\n", cfg.n, cfg.k);
            return 1;
        }
        j["lambda"] = sig12(scale_factor(cfg.n, cfg.k));
        j["hyperbolic"] = f > 0;
        if (f == 0)
            j["warning"] = "non-hyperbolic (flat) tiling: no asymptotic boundary growth";

        std::string csv = "# schema=1\nlayer,length,n_a,n_b,b_ratio\n";
        const bool has_rule = cfg.n == 5 && cfg.k == 4;
        if (has_rule) {
            const SubstitutionRule rule = SubstitutionRule::for_tiling(cfg.n, cfg.k);
            const MQAStack stack = mqa_build(LetterSequence{"aaaaa", true, 0}, cfg.steps, rule);
            j["perron"] = sig12(SubstitutionMatrix::from_rule(rule).perron_eigenvalue());
            json layers = json::array(), lengths = json::array(), counts = json::array();
            for (const auto& layer : stack.layers) {
                layers.push_back(layer.letters);
                lengths.push_back(layer.size());
                const auto [na, nb] = letter_counts(layer);
                counts.push_back({{"n_a", na}, {"n_b", nb}});
                csv += std::to_string(layer.layer) + "," + std::to_string(layer.size()) + "," +
                       std::to_string(na) + "," + std::to_string(nb) + "," +
                       fmt12(layer.size() ? static_cast<double>(nb) / layer.size() : 0.0) + "\n";
            }
            j["layers"] = std::move(layers);
            j["lengths"] = std::move(lengths);
            j["letter_counts"] = std::move(counts);
            j["b_ratio_limit"] = sig12(1.0 - 1.0 / std::sqrt(3.0));
            json parents = json::array(), starts = json::array();
            for (const auto& p : stack.parent) parents.push_back(p);
            for (const auto& st : stack.image_start) starts.push_back(st);
            j["parent"] = std::move(parents);
            j["image_start"] = std::move(starts);
        } else {
            j["warning"] = "no letter rule registered for this tiling; reporting lambda only";
        }

        if (wants(cfg, "json"))
            write_file(out_path(cfg, "inflate.json"), j.dump(2) + "\n");
        if (wants(cfg, "csv") && has_rule)
            write_file(out_path(cfg, "letters.csv"), csv);
        return 0;
    });
}

int cmd_build(const RunConfig& cfg) {
    return guarded([&]() -> int {
        if (int rc = check_config(cfg, true))
            return rc;
        const auto g = tiling::TilingGraph::build(cfg.steps);
        if (wants(cfg, "json"))
            write_file(out_path(cfg, "tiling.json"), tiling_json(g));
        if (wants(cfg, "svg"))
            write_file(out_path(cfg, "tiling.svg"), tiling_svg(g));
        return 0;
    });
}

int cmd_contract(const RunConfig& cfg) {
    return guarded([&]() -> int {
        if (int rc = check_config(cfg, true))
            return rc;
        const auto g = tiling::TilingGraph::build(cfg.steps);
        const auto state = contract_for(cfg, g);
        if (wants(cfg, "json"))
            write_file(out_path(cfg, "dimer_state.json"), dimer_state_json(state));
        if (wants(cfg, "svg"))
            write_file(out_path(cfg, "contract.svg"), dimer_svg(g, state));
        return 0;
    });
}

int cmd_render(const RunConfig& cfg) {
    return guarded([&]() -> int {
        if (int rc = check_config(cfg, true))
            return rc;
        const auto g = tiling::TilingGraph::build(cfg.steps);
        write_file(out_path(cfg, "tiling.svg"), tiling_svg(g));
        write_file(out_path(cfg, "dimers.svg"), dimer_svg(g, contract_for(cfg, g)));
        return 0;
    });
}

int cmd_analyze(const RunConfig& cfg) {
    return guarded([&]() -> int {
        if (int rc = check_config(cfg, true))
            return rc;
        const auto g = tiling::TilingGraph::build(cfg.steps);
        // raw state for the cut bound (checked in the tiling's own frame), the
        // anchor-rotated view for all position-indexed reports
        const auto raw = dimers::contract(g, logical_inputs(cfg, g));
        const auto state = rotate_state(raw, cfg.seed_anchor);
        const int L = state.sites();

        const auto profile = entanglement::entropy_profile(state);
        std::string profile_csv = "# schema=1\nell,mean_S_nats,std_S_nats,mean_S_bits\n";
        for (int ell = 1; ell < L; ++ell)
            profile_csv += std::to_string(ell) + "," + fmt12(profile.mean(ell)) + "," +
                           fmt12(profile.std_nats[ell - 1]) + "," +
                           fmt12(profile.mean(ell) / std::log(2.0)) + "\n";

        json fit_json;
        fit_json["schema"] = 1;
        if (L / 2 - std::max(cfg.fit_lo, 1) + 1 >= 5) {
            const auto fit = entanglement::fit_central_charge(profile, cfg.fit_lo, cfg.fit_hi);
            fit_json["c"] = sig12(fit.c);
            fit_json["intercept"] = sig12(fit.intercept);
            fit_json["residual_nats"] = sig12(fit.residual);
            fit_json["fit_range"] = {fit.fit_lo, fit.fit_hi};
        } else {
            fit_json["warning"] = "system too small for a central-charge fit";
        }
        if (L / 8 - 8 + 1 >= 5) {
            const auto cmax = entanglement::c_max(g, 2);
            fit_json["c_max"] = sig12(cmax.c_max);
            fit_json["c_hat"] = sig12(cmax.c_hat);
            fit_json["s_over_alpha"] = sig12(cmax.s_over_alpha);
        } else {
            fit_json["s_over_alpha"] = sig12(geometry::edge_length({5, 4, 1.0}));
        }
        fit_json["c_reference"] = sig12(9.0 * std::log(2.0) / std::log(2.0 + std::sqrt(3.0)));
        fit_json["gravitational_note"] =
            "c_max = 3 c_hat ln(chi): the effective gravitational constant scales as 1/ln(chi)";

        const auto hist = dimers::correlation_histogram(state);
        std::string hist_csv = "# schema=1\ndistance,count\n";
        for (size_t d = 0; d < hist.size(); ++d)
            hist_csv += std::to_string(d) + "," + std::to_string(hist[d]) + "\n";

        // Fidelity grid over window sizes used in the translation checks.
        std::vector<int> ells;
        for (int ell : {50, 100, 200})
            if (ell < L)
                ells.push_back(ell);
        if (ells.empty())
            ells.push_back(std::max(1, L / 4));
        std::string grid_csv = "# schema=1\nell_then_row_of_fidelities_by_d\n";
        json fid_json;
        fid_json["schema"] = 1;
        fid_json["rng_seed"] = cfg.rng_seed;
        json fid_rows = json::array();
        for (int ell : ells) {
            grid_csv += std::to_string(ell);
            double mean = 0.0;
            for (int d = 0; d < L; ++d) {
                const double f = dimers::dimer_fidelity(state, ell, d);
                grid_csv += "," + fmt12(f);
                mean += f;
            }
            grid_csv += "\n";
            mean /= L;
            const double baseline = shuffled_matching_baseline(state, ell, 0, cfg.rng_seed);
            fid_rows.push_back({{"ell", ell},
                                {"mean_fidelity", sig12(mean)},
                                {"shuffled_baseline", sig12(baseline)},
                                {"ratio", sig12(baseline > 0 ? mean / baseline : 0.0)}});
            mean = 0.0;
        }
        fid_json["windows"] = std::move(fid_rows);

        const auto rt = entanglement::rt_bound_check(g, raw, 2);
        json rt_json;
        rt_json["schema"] = 1;
        rt_json["chi"] = 2;
        rt_json["regions_checked"] = rt.regions_checked;
        rt_json["exhaustive"] = rt.exhaustive;
        rt_json["max_ratio"] = sig12(rt.max_ratio);
        json viols = json::array();
        for (const auto& v : rt.violations)
            viols.push_back({{"begin", v.begin}, {"length", v.length}});
        rt_json["violations"] = std::move(viols);

        if (wants(cfg, "csv")) {
            write_file(out_path(cfg, "entropy_profile.csv"), profile_csv);
            write_file(out_path(cfg, "correlation_histogram.csv"), hist_csv);
            write_file(out_path(cfg, "fidelity_grid.csv"), grid_csv);
        }
        if (wants(cfg, "json")) {
            write_file(out_path(cfg, "central_charge.json"), fit_json.dump(2) + "\n");
            write_file(out_path(cfg, "fidelity_summary.json"), fid_json.dump(2) + "\n");
            write_file(out_path(cfg, "rt_report.json"), rt_json.dump(2) + "\n");
        }

        if (!rt.violations.empty()) {
            std::fprintf(stderr, "error: %zu region(s) violate the minimal-cut entropy bound\n",
                         rt.violations.size());
            return 2;
        }
        return 0;
    });
}

int cmd_report(const RunConfig& cfg) {
    if (int rc = cmd_inflate(cfg))
        return rc;
    if (int rc = cmd_build(cfg))
        return rc;
    if (int rc = cmd_contract(cfg))
        return rc;
    if (int rc = cmd_render(cfg))
        return rc;
    return cmd_analyze(cfg);
}

}  // namespace htn::io
