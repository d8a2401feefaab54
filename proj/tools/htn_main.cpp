#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htn/io.hpp"

namespace {

bool parse_pair(const std::string& s, int& a, int& b) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        return false;
    try {
        a = std::stoi(s.substr(0, comma));
        b = std::stoi(s.substr(comma + 1));
    } catch (...) {
        return false;
    }
    return true;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t comma = s.find(',', pos);
        out.push_back(s.substr(pos, comma == std::string::npos ? comma : comma - pos));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic {n,k} tilings, pentagon-code dimer contraction and boundary-state analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    htn::io::RunConfig cfg;
    std::string tiling = "5,4";
    std::string formats = "json,csv,svg";
    std::string fit_range;

    app.add_option("--tiling", tiling, "Schlafli symbol n,k (default 5,4)")->capture_default_str();
    app.add_option("--steps", cfg.steps, "number of inflation steps")->capture_default_str();
    app.add_option("--logical", cfg.logical, "all0 | all1 | file:<path>")->capture_default_str();
    app.add_option("--seed-anchor", cfg.seed_anchor, "rotate the boundary anchor by this many sites");
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", formats, "comma-separated subset of json,csv,svg")->capture_default_str();
    app.add_option("--fit-range", fit_range, "central-charge fit range LO,HI");
    app.add_option("--rng-seed", cfg.rng_seed, "seed for randomized baselines")->capture_default_str();
    app.add_flag("--allow-large", cfg.allow_large, "lift the steps <= 6 guard");

    auto* c_inflate = app.add_subcommand("inflate", "layer words, MQA stack and scale factor");
    auto* c_build = app.add_subcommand("build", "construct the tiling patch");
    auto* c_contract = app.add_subcommand("contract", "contract the dimer network");
    auto* c_analyze = app.add_subcommand("analyze", "entropy, central charge, correlations, fidelity, cut bounds");
    auto* c_render = app.add_subcommand("render", "SVG figures of the tiling and dimers");
    auto* c_report = app.add_subcommand("report", "run the full pipeline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 for --help, usage errors map to 1
    }

    if (!parse_pair(tiling, cfg.n, cfg.k)) {
        std::fprintf(stderr, "error: --tiling expects n,k\n");
        return 1;
    }
    cfg.formats = split_csv(formats);
    if (!fit_range.empty() && !parse_pair(fit_range, cfg.fit_lo, cfg.fit_hi)) {
        std::fprintf(stderr, "error: --fit-range expects LO,HI\n");
        return 1;
    }

    try {
        if (c_inflate->parsed())
            return htn::io::cmd_inflate(cfg);
        if (c_build->parsed())
            return htn::io::cmd_build(cfg);
        if (c_contract->parsed())
            return htn::io::cmd_contract(cfg);
        if (c_analyze->parsed())
            return htn::io::cmd_analyze(cfg);
        if (c_render->parsed())
            return htn::io::cmd_render(cfg);
        if (c_report->parsed())
            return htn::io::cmd_report(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
