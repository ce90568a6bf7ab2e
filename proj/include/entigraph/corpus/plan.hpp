#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entigraph/corpus/backend.hpp"
#include "entigraph/corpus/document.hpp"

namespace entigraph::corpus {

struct EntityPlan {
    std::string doc_id;
    std::vector<std::string> entities;
    /// Every (i, j), i < j, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    /// A seeded uniform sample of (i, j, k), i < j < k, in lexicographic order.
    std::vector<std::array<std::size_t, 3>> triplets;
};

struct PlanOptions {
    std::size_t triplet_cap = 32;
    std::uint64_t seed = 0;
};

/// Builds the relation plan for an ordered list of entities; duplicates are
/// dropped keeping the first occurrence.
EntityPlan make_plan(std::string doc_id, std::span<const std::string> entities, const PlanOptions& options = {});

/// Asks the backend for entities and plans the relations among them. Throws
/// std::invalid_argument on empty text and CorpusError when no entity is found;
/// backend errors propagate unchanged.
EntityPlan extract_entities(const Document& doc, SynthesisBackend& backend, const PlanOptions& options = {});

/// {"doc_id", "entities", "pairs": [[i, j]...], "triplets": [[i, j, k]...]}
std::string plan_to_json(const EntityPlan& plan);

}  // namespace entigraph::corpus
