#pragma once

#include <string>
#include <vector>

#include "htn/dimers.hpp"
#include "htn/entanglement.hpp"
#include "htn/tiling_graph.hpp"

namespace htn::io {

struct RunConfig {
    int n = 5;
    int k = 4;
    int steps = 2;
    std::string logical = "all0";  // all0 | all1 | file:<path with one 0/1 per tile line>
    int seed_anchor = 0;           // rotation of the boundary anchor, in sites
    std::string out_dir = "out";
    std::vector<std::string> formats = {"json", "csv", "svg"};
    int fit_lo = 8;
    int fit_hi = 0;  // 0 = L/2
    unsigned long rng_seed = 0;
    bool allow_large = false;  // lifts the steps <= 6 guard
};

// Subcommand drivers. Each writes its files under out_dir and returns the
// process exit code: 0 success, 1 usage/config error, 2 invariant violation.
int cmd_inflate(const RunConfig& cfg);
int cmd_build(const RunConfig& cfg);
int cmd_contract(const RunConfig& cfg);
int cmd_analyze(const RunConfig& cfg);
int cmd_render(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

// Serializers shared by the commands and the tests.
std::string tiling_json(const tiling::TilingGraph& g);
std::string dimer_state_json(const dimers::DimerState& s);
std::string tiling_svg(const tiling::TilingGraph& g, double alpha = 1.0);
std::string dimer_svg(const tiling::TilingGraph& g, const dimers::DimerState& s,
                      double alpha = 1.0);

// Shuffled-matching chance level: mean agreement of `samples` uniformly
// random perfect matchings on the window's modes with the state's dimers.
double shuffled_matching_baseline(const dimers::DimerState& s, int ell, int window_start,
                                  unsigned long rng_seed, int samples = 1000);

// Round to 12 significant digits so serialized numbers are reproducible.
double sig12(double v);

}  // namespace htn::io
