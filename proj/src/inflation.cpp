#include "htn/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace htn::inflation {

namespace {

void check_alphabet(const LetterSequence& seq) {
    if (seq.letters.empty())
        throw std::invalid_argument("LetterSequence must be non-empty");
    for (char c : seq.letters)
        if (c != 'a' && c != 'b')
            throw std::invalid_argument("LetterSequence letters must be 'a' or 'b'");
}

}  // namespace

SubstitutionRule SubstitutionRule::for_tiling(int n, int k) {
    if (n == 5 && k == 4)
        return SubstitutionRule{};
    throw std::domain_error("no vertex-inflation letter rule registered for this tiling");
}

SubstitutionMatrix SubstitutionMatrix::from_rule(const SubstitutionRule& rule) {
    SubstitutionMatrix m{0, 0, 0, 0};
    for (char c : rule.image_a) (c == 'a' ? m.aa : m.ab)++;
    for (char c : rule.image_b) (c == 'a' ? m.ba : m.bb)++;
    return m;
}

std::pair<long, long> SubstitutionMatrix::apply(std::pair<long, long> counts) const {
    return {aa * counts.first + ba * counts.second,
            ab * counts.first + bb * counts.second};
}

double SubstitutionMatrix::perron_eigenvalue() const {
    const double tr = static_cast<double>(aa + bb);
    const double det = static_cast<double>(aa * bb - ab * ba);
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0)
        throw std::domain_error("SubstitutionMatrix: complex spectrum");
    return (tr + std::sqrt(disc)) / 2.0;
}

double scale_factor(int n, int k) {
    if (n < 3 || k < 3)
        throw std::domain_error("scale_factor: n, k must be >= 3");
    const double f = static_cast<double>(n) * k - 2.0 * (n + k);
    if (f < 0.0)
        throw std::domain_error("scale_factor: spherical tiling (f < 0)");
    return (2.0 + f + std::sqrt((4.0 + f) * f)) / 2.0;
}

LetterSequence inflate(const LetterSequence& seq, const SubstitutionRule& rule) {
    check_alphabet(seq);
    LetterSequence out;
    out.cyclic = seq.cyclic;
    out.layer = seq.layer + 1;
    out.letters.reserve(seq.letters.size() * rule.image_a.size());
    for (char c : seq.letters)
        out.letters += rule.image(c);
    return out;
}

namespace {

// Per-position parse multiplicity (capped at 2) of the word's suffixes into
// blocks {image_a, image_b}.
std::vector<int> parse_counts(const std::string& word, const SubstitutionRule& rule) {
    const long n = static_cast<long>(word.size());
    const long la = static_cast<long>(rule.image_a.size());
    const long lb = static_cast<long>(rule.image_b.size());
    std::vector<int> count(n + 1, 0);
    count[n] = 1;
    for (long i = n - 1; i >= 0; --i) {
        int c = 0;
        if (i + la <= n && word.compare(i, la, rule.image_a) == 0)
            c += count[i + la];
        if (i + lb <= n && word.compare(i, lb, rule.image_b) == 0)
            c += count[i + lb];
        count[i] = std::min(c, 2);
    }
    return count;
}

// Assumes count[0] == 1; returns the preimage letters and block starts.
void extract_parse(const std::string& word, const SubstitutionRule& rule,
                   const std::vector<int>& count, std::string& preimage,
                   std::vector<long>& starts) {
    const long n = static_cast<long>(word.size());
    const long la = static_cast<long>(rule.image_a.size());
    const long lb = static_cast<long>(rule.image_b.size());
    long i = 0;
    while (i < n) {
        starts.push_back(i);
        if (i + la <= n && word.compare(i, la, rule.image_a) == 0 && count[i + la] > 0) {
            preimage += 'a';
            i += la;
        } else {
            preimage += 'b';
            i += lb;
        }
    }
}

}  // namespace

DeflateResult deflate(const LetterSequence& seq, const SubstitutionRule& rule) {
    check_alphabet(seq);
    const std::string& w = seq.letters;
    const long n = seq.size();

    if (!seq.cyclic) {
        auto count = parse_counts(w, rule);
        if (count[0] == 0)
            return {std::nullopt, "no decomposition into inflation blocks"};
        if (count[0] > 1)
            return {std::nullopt, "ambiguous decomposition into inflation blocks"};
        LetterSequence pre;
        pre.cyclic = false;
        pre.layer = seq.layer - 1;
        std::vector<long> starts;
        extract_parse(w, rule, count, pre.letters, starts);
        return {pre, ""};
    }

    // Cyclic: a parse may start at any rotation. Collect the distinct sets of
    // block-start positions over all successful rotations; demand exactly one.
    std::set<std::vector<long>> boundary_sets;
    std::string first_preimage;
    long first_rotation = -1;
    bool ambiguous_within = false;
    for (long r = 0; r < n; ++r) {
        std::string rotated = w.substr(r) + w.substr(0, r);
        auto count = parse_counts(rotated, rule);
        if (count[0] == 0)
            continue;
        if (count[0] > 1) {
            ambiguous_within = true;
            break;
        }
        std::string pre;
        std::vector<long> starts;
        extract_parse(rotated, rule, count, pre, starts);
        for (long& s : starts) s = (s + r) % n;
        std::vector<long> sorted = starts;
        std::sort(sorted.begin(), sorted.end());
        if (boundary_sets.insert(sorted).second && boundary_sets.size() == 1) {
            first_preimage = pre;
            first_rotation = r;
        }
    }
    if (ambiguous_within || boundary_sets.size() > 1)
        return {std::nullopt, "ambiguous decomposition: multiple distinct cyclic block parses"};
    if (boundary_sets.empty())
        return {std::nullopt, "no decomposition into inflation blocks"};
    if (!boundary_sets.begin()->empty() && boundary_sets.begin()->front() != 0 &&
        !std::binary_search(boundary_sets.begin()->begin(), boundary_sets.begin()->end(), 0L))
        return {std::nullopt,
                "parse exists but is misaligned with the anchor (first block starts at offset " +
                    std::to_string(first_rotation) + ")"};

    // Rotate the preimage so its first letter is the block containing offset 0.
    // first_rotation is the first successful rotation; when 0 is a block start
    // that rotation is 0 itself, so the preimage is already aligned.
    LetterSequence pre;
    pre.cyclic = true;
    pre.layer = seq.layer - 1;
    pre.letters = first_preimage;
    return {pre, ""};
}

std::pair<long, long> letter_counts(const LetterSequence& seq) {
    long na = 0, nb = 0;
    for (char c : seq.letters) (c == 'a' ? na : nb)++;
    return {na, nb};
}

std::vector<long> find_inflated_occurrences(const LetterSequence& block,
                                            const LetterSequence& target_layer,
                                            const SubstitutionRule& rule) {
    check_alphabet(target_layer);
    const long n = target_layer.size();
    std::vector<long> offsets;
    if (block.letters.empty()) {
        for (long i = 0; i < n; ++i) offsets.push_back(i);
        return offsets;
    }
    LetterSequence linear_block{block.letters, false, block.layer};
    const std::string needle = inflate(linear_block, rule).letters;
    const std::string haystack =
        target_layer.cyclic ? target_layer.letters + target_layer.letters : target_layer.letters;
    const long limit = target_layer.cyclic
                           ? n
                           : n - static_cast<long>(needle.size()) + 1;
    for (long i = 0; i < limit; ++i)
        if (haystack.compare(i, needle.size(), needle) == 0)
            offsets.push_back(i);
    return offsets;
}

MQAStack mqa_build(const LetterSequence& seed, int steps, const SubstitutionRule& rule) {
    check_alphabet(seed);
    if (steps < 0)
        throw std::invalid_argument("mqa_build: steps must be >= 0");
    MQAStack stack;
    stack.layers.push_back(seed);
    for (int s = 0; s < steps; ++s) {
        const LetterSequence& prev = stack.layers.back();
        std::vector<long> parent;
        std::vector<long> image_start;
        parent.reserve(prev.letters.size() * rule.image_a.size());
        image_start.reserve(prev.letters.size());
        long pos = 0;
        for (long i = 0; i < prev.size(); ++i) {
            const std::string& img = rule.image(prev.letters[i]);
            image_start.push_back(pos);
            for (size_t j = 0; j < img.size(); ++j) parent.push_back(i);
            pos += static_cast<long>(img.size());
        }
        stack.layers.push_back(inflate(prev, rule));
        stack.parent.push_back(std::move(parent));
        stack.image_start.push_back(std::move(image_start));
    }
    return stack;
}

}  // namespace htn::inflation
