#include "entigraph/corpus/metrics.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace entigraph::corpus {
namespace {

// Length-prefixed join so distinct token sequences never collide.
std::string ngram_key(const std::vector<std::string>& tokens, std::size_t start, std::size_t n) {
    std::string key;
    for (std::size_t i = start; i < start + n; ++i) {
        key += std::to_string(tokens[i].size());
        key += ':';
        key += tokens[i];
    }
    return key;
}

}  // namespace

double ngram_overlap(const Document& source, std::span<const Document> synthetic, std::size_t n,
                     const Tokenizer& tokenizer) {
    if (n < 1) throw std::invalid_argument("n-gram order must be at least 1");
    const auto src_tokens = tokenizer(source.text);
    std::unordered_set<std::string> src_grams;
    for (std::size_t i = 0; i + n <= src_tokens.size(); ++i) src_grams.insert(ngram_key(src_tokens, i, n));

    std::size_t total = 0;
    std::size_t hits = 0;
    for (const auto& doc : synthetic) {
        const auto tokens = tokenizer(doc.text);
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            ++total;
            hits += src_grams.contains(ngram_key(tokens, i, n));
        }
    }
    if (total == 0) {
        std::clog << "warning: synthetic documents have fewer than " << n << " tokens; overlap reported as 0\n";
        return 0.0;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

ShingleProfile shingle_profile(const Document& doc, std::size_t window) {
    if (window < 1) throw std::invalid_argument("shingle window must be at least 1");
    ShingleProfile profile;
    profile.doc_id = doc.id;
    profile.window = window;
    const auto tokens = shingle_tokens(doc.text);
    if (tokens.size() < window) return profile;
    profile.window_count = tokens.size() - window + 1;
    profile.shingles.reserve(profile.window_count);
    for (std::size_t i = 0; i < profile.window_count; ++i) {
        std::uint64_t h = fnv1a("");
        for (std::size_t k = i; k < i + window; ++k) {
            h = fnv1a(tokens[k], h);
            h = fnv1a(std::string_view("\x1f", 1), h);
        }
        profile.shingles.push_back(h);
    }
    std::sort(profile.shingles.begin(), profile.shingles.end());
    profile.shingles.erase(std::unique(profile.shingles.begin(), profile.shingles.end()), profile.shingles.end());
    return profile;
}

namespace {

std::size_t intersection_size(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

double jaccard_sets(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.empty() && b.empty()) return 1.0;
    const std::size_t inter = intersection_size(a, b);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

void check_threshold(std::size_t size, double threshold) {
    if (size < 2) throw std::invalid_argument("duplicate_rate needs at least two documents");
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("Jaccard threshold must be in [0, 1]");
}

bool exact_is_duplicate(std::span<const ShingleProfile> profiles, std::size_t d, double threshold) {
    for (std::size_t e = 0; e < d; ++e)
        if (jaccard_sets(profiles[e].shingles, profiles[d].shingles) > threshold) return true;
    return false;
}

}  // namespace

double jaccard(const ShingleProfile& a, const ShingleProfile& b) { return jaccard_sets(a.shingles, b.shingles); }

bool pair_copy_check(const ShingleProfile& seed_profile, const ShingleProfile& synth_profile) {
    if (seed_profile.window != synth_profile.window)
        throw std::invalid_argument("shingle windows differ: " + std::to_string(seed_profile.window) + " vs " +
                                    std::to_string(synth_profile.window));
    return intersection_size(seed_profile.shingles, synth_profile.shingles) > 0;
}

double duplicate_rate(std::span<const ShingleProfile> profiles, double jaccard_threshold, DedupMethod method) {
    check_threshold(profiles.size(), jaccard_threshold);
    std::size_t duplicates = 0;

    if (method == DedupMethod::Exact) {
        for (std::size_t d = 1; d < profiles.size(); ++d) duplicates += exact_is_duplicate(profiles, d, jaccard_threshold);
        return static_cast<double>(duplicates) / static_cast<double>(profiles.size());
    }

    // A pair with no common shingle has J = 0 unless both sets are empty, and
    // J = 0 never exceeds a threshold in [0, 1]. So only pairs that share a
    // shingle, or two empty sets, need scoring.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
    bool seen_empty = false;
    std::vector<std::size_t> overlap;
    std::vector<std::size_t> touched;
    overlap.assign(profiles.size(), 0);
    for (std::size_t d = 0; d < profiles.size(); ++d) {
        const auto& s = profiles[d].shingles;
        bool dup = false;
        if (s.empty()) {
            dup = seen_empty && 1.0 > jaccard_threshold;
            seen_empty = true;
        } else {
            touched.clear();
            for (std::uint64_t h : s) {
                auto it = index.find(h);
                if (it == index.end()) continue;
                for (std::size_t e : it->second) {
                    if (overlap[e]++ == 0) touched.push_back(e);
                }
            }
            for (std::size_t e : touched) {
                const std::size_t inter = overlap[e];
                const double j = static_cast<double>(inter) /
                                 static_cast<double>(profiles[e].shingles.size() + s.size() - inter);
                if (j > jaccard_threshold) dup = true;
                overlap[e] = 0;
            }
            for (std::uint64_t h : s) index[h].push_back(d);
        }
        duplicates += dup;
    }
    return static_cast<double>(duplicates) / static_cast<double>(profiles.size());
}

double duplicate_rate(std::span<const Document> corpus, double jaccard_threshold, std::size_t window,
                      DedupMethod method) {
    check_threshold(corpus.size(), jaccard_threshold);
    std::vector<ShingleProfile> profiles;
    profiles.reserve(corpus.size());
    for (const auto& doc : corpus) profiles.push_back(shingle_profile(doc, window));
    return duplicate_rate(profiles, jaccard_threshold, method);
}

}  // namespace entigraph::corpus
