#include "entigraph/corpus/plan.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "entigraph/rng.hpp"

namespace entigraph::corpus {

EntityPlan make_plan(std::string doc_id, std::span<const std::string> entities, const PlanOptions& options) {
    EntityPlan plan;
    plan.doc_id = std::move(doc_id);
    std::unordered_set<std::string> seen;
    for (const auto& e : entities)
        if (seen.insert(e).second) plan.entities.push_back(e);

    const std::size_t n = plan.entities.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) plan.pairs.emplace_back(i, j);

    std::vector<std::array<std::size_t, 3>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) all.push_back({i, j, k});
    if (all.size() <= options.triplet_cap) {
        plan.triplets = std::move(all);
    } else {
        Rng rng = substream_rng(options.seed, fnv1a(plan.doc_id));
        std::sample(all.begin(), all.end(), std::back_inserter(plan.triplets), options.triplet_cap, rng);
    }
    return plan;
}

EntityPlan extract_entities(const Document& doc, SynthesisBackend& backend, const PlanOptions& options) {
    if (doc.text.empty()) throw std::invalid_argument("document " + doc.id + " has no text");
    const auto entities = backend.extract_entities(doc);
    auto plan = make_plan(doc.id, entities, options);
    if (plan.entities.empty()) throw CorpusError("no entities found in document " + doc.id);
    return plan;
}

std::string plan_to_json(const EntityPlan& plan) {
    nlohmann::ordered_json obj;
    obj["doc_id"] = plan.doc_id;
    obj["entities"] = plan.entities;
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& [i, j] : plan.pairs) pairs.push_back({i, j});
    obj["pairs"] = std::move(pairs);
    auto triplets = nlohmann::ordered_json::array();
    for (const auto& t : plan.triplets) triplets.push_back({t[0], t[1], t[2]});
    obj["triplets"] = std::move(triplets);
    return obj.dump();
}

}  // namespace entigraph::corpus
