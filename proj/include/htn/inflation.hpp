#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace htn::inflation {

// Cyclic (or linear) word over the boundary-vertex alphabet {a, b}.
// 'a' marks a vertex touching one boundary tile, 'b' a vertex between two.
struct LetterSequence {
    std::string letters;
    bool cyclic = true;
    int layer = 0;

    long size() const { return static_cast<long>(letters.size()); }
};

// Replacement rule applied per letter. The {5,4} vertex-inflation rule is
// a -> abaab, b -> ab; other tilings can plug their own images in.
struct SubstitutionRule {
    std::string image_a = "abaab";
    std::string image_b = "ab";

    const std::string& image(char letter) const { return letter == 'a' ? image_a : image_b; }

    // Built-in table. Throws std::domain_error for tilings without a rule.
    static SubstitutionRule for_tiling(int n, int k);
};

// Letter-count matrix of a rule, rows indexed by source letter.
struct SubstitutionMatrix {
    long aa = 3, ab = 2;   // a -> (aa 'a's, ab 'b's)
    long ba = 1, bb = 1;   // b -> (ba 'a's, bb 'b's)

    static SubstitutionMatrix from_rule(const SubstitutionRule& rule);

    std::pair<long, long> apply(std::pair<long, long> counts) const;
    double perron_eigenvalue() const;
};

// Asymptotic boundary growth factor lambda for an {n,k} tiling:
// lambda = (2 + f + sqrt((4+f) f)) / 2 with f = nk - 2(n+k).
// Throws std::domain_error when f < 0 (spherical tiling).
double scale_factor(int n, int k);

LetterSequence inflate(const LetterSequence& seq,
                       const SubstitutionRule& rule = SubstitutionRule{});

// Outcome of a deflation parse. `value` empty means no (or no unique)
// decomposition into inflation blocks exists; `diagnostic` says why.
struct DeflateResult {
    std::optional<LetterSequence> value;
    std::string diagnostic;

    explicit operator bool() const { return value.has_value(); }
};

DeflateResult deflate(const LetterSequence& seq,
                      const SubstitutionRule& rule = SubstitutionRule{});

// (N_a, N_b)
std::pair<long, long> letter_counts(const LetterSequence& seq);

// Offsets at which inflate(block) occurs as a substring of target_layer
// (cyclically when target_layer is cyclic). An empty block matches everywhere.
std::vector<long> find_inflated_occurrences(const LetterSequence& block,
                                            const LetterSequence& target_layer,
                                            const SubstitutionRule& rule = SubstitutionRule{});

// Stack of successive inflation layers with the letter-level parent maps.
// parent[i][j] is the index on layer i of the letter whose image contains
// position j of layer i+1; image_start[i][p] is where that image begins.
struct MQAStack {
    std::vector<LetterSequence> layers;
    std::vector<std::vector<long>> parent;
    std::vector<std::vector<long>> image_start;

    int steps() const { return static_cast<int>(layers.size()) - 1; }
};

MQAStack mqa_build(const LetterSequence& seed, int steps,
                   const SubstitutionRule& rule = SubstitutionRule{});

}  // namespace htn::inflation
