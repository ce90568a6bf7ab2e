#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "entigraph/corpus/backend.hpp"
#include "entigraph/corpus/document.hpp"
#include "entigraph/corpus/plan.hpp"

namespace entigraph::corpus {

/// Entity indices of one relation: two for a pair, three for a triplet.
using Relation = std::vector<std::size_t>;

struct SynthesisOptions {
    std::size_t budget = 1;
    /// Generations running at once.
    std::size_t max_in_flight = 1;
    Tokenizer tokenizer = default_tokenizer();
};

struct RelationFailure {
    Relation relation;
    std::string error;
};

struct SynthesisResult {
    /// In plan order; failed relations leave no document.
    std::vector<Document> documents;
    std::vector<RelationFailure> failures;
    /// Relations beyond the budget.
    std::vector<Relation> skipped;

    std::size_t total_tokens() const;
};

/// "<doc>:<i>-<j>" or "<doc>:<i>-<j>-<k>"
std::string relation_doc_id(const std::string& doc_id, const Relation& relation);

/// Generates one document per relation, pairs first and then triplets, up to
/// options.budget relations. Output does not depend on max_in_flight.
SynthesisResult synthesize_corpus(const EntityPlan& plan, const Document& doc, SynthesisBackend& backend,
                                  const SynthesisOptions& options);

/// {"documents": [{"id", "token_count"}], "total_tokens", "failures": [{"relation", "error"}], "skipped": [[...]]}
std::string synthesis_manifest_json(const SynthesisResult& result);

}  // namespace entigraph::corpus
