#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entigraph/corpus/document.hpp"

namespace entigraph::corpus {

/// Percentage of synthetic n-grams (over the whole list) that also occur in the
/// source. Returns 0 and logs a warning when no synthetic document has n tokens.
double ngram_overlap(const Document& source, std::span<const Document> synthetic, std::size_t n,
                     const Tokenizer& tokenizer = default_tokenizer());

inline constexpr std::size_t kDefaultShingleWindow = 13;

struct ShingleProfile {
    std::string doc_id;
    std::size_t window = kDefaultShingleWindow;
    /// Number of token windows, counting repeats.
    std::size_t window_count = 0;
    /// Sorted, unique fingerprints.
    std::vector<std::uint64_t> shingles;
};

ShingleProfile shingle_profile(const Document& doc, std::size_t window = kDefaultShingleWindow);

/// |A ∩ B| / |A ∪ B|; two empty sets give 1.
double jaccard(const ShingleProfile& a, const ShingleProfile& b);

/// True when the profiles share a shingle. Throws std::invalid_argument on
/// window mismatch.
bool pair_copy_check(const ShingleProfile& seed_profile, const ShingleProfile& synth_profile);

enum class DedupMethod {
    Exact,
    /// Inverted index over shingles: only pairs sharing a shingle are scored.
    /// Same result as Exact.
    Indexed,
};

/// Fraction of documents whose Jaccard similarity with some earlier document
/// is strictly above the threshold.
double duplicate_rate(std::span<const Document> corpus, double jaccard_threshold,
                      std::size_t window = kDefaultShingleWindow, DedupMethod method = DedupMethod::Exact);

/// Same, from precomputed profiles.
double duplicate_rate(std::span<const ShingleProfile> profiles, double jaccard_threshold,
                      DedupMethod method = DedupMethod::Exact);

}  // namespace entigraph::corpus
