#include "entigraph/corpus/synthesis.hpp"

#include <atomic>
#include <optional>
#include <thread>

#include <json.hpp>

namespace entigraph::corpus {

std::size_t SynthesisResult::total_tokens() const {
    std::size_t total = 0;
    for (const auto& d : documents) total += d.token_count;
    return total;
}

std::string relation_doc_id(const std::string& doc_id, const Relation& relation) {
    std::string id = doc_id + ":";
    for (std::size_t i = 0; i < relation.size(); ++i) {
        if (i > 0) id += '-';
        id += std::to_string(relation[i]);
    }
    return id;
}

namespace {

struct Slot {
    std::optional<std::string> text;
    std::string error;
};

}  // namespace

SynthesisResult synthesize_corpus(const EntityPlan& plan, const Document& doc, SynthesisBackend& backend,
                                  const SynthesisOptions& options) {
    if (options.budget < 1) throw std::invalid_argument("synthesis budget must be at least 1");
    if (options.max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
    const Tokenizer& tokenize = options.tokenizer ? options.tokenizer : default_tokenizer();

    std::vector<Relation> relations;
    for (const auto& [i, j] : plan.pairs) relations.push_back({i, j});
    for (const auto& t : plan.triplets) relations.push_back({t[0], t[1], t[2]});
    for (const auto& rel : relations)
        for (std::size_t idx : rel)
            if (idx >= plan.entities.size()) throw std::invalid_argument("plan relation index out of range");

    SynthesisResult result;
    const std::size_t run = std::min(options.budget, relations.size());
    result.skipped.assign(relations.begin() + static_cast<std::ptrdiff_t>(run), relations.end());

    std::vector<Slot> slots(run);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < run; k = next++) {
            std::vector<std::string> names;
            for (std::size_t idx : relations[k]) names.push_back(plan.entities[idx]);
            try {
                slots[k].text = backend.generate(doc, names);
            } catch (const std::exception& e) {
                slots[k].error = e.what();
            }
        }
    };
    const std::size_t n_threads = std::min(options.max_in_flight, run);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    for (std::size_t k = 0; k < run; ++k) {
        if (slots[k].text) {
            result.documents.push_back(
                Document::make(relation_doc_id(plan.doc_id, relations[k]), std::move(*slots[k].text), tokenize));
        } else {
            result.failures.push_back({relations[k], std::move(slots[k].error)});
        }
    }
    return result;
}

std::string synthesis_manifest_json(const SynthesisResult& result) {
    nlohmann::ordered_json obj;
    auto docs = nlohmann::ordered_json::array();
    for (const auto& d : result.documents) docs.push_back({{"id", d.id}, {"token_count", d.token_count}});
    obj["documents"] = std::move(docs);
    obj["total_tokens"] = result.total_tokens();
    auto failures = nlohmann::ordered_json::array();
    for (const auto& f : result.failures) failures.push_back({{"relation", f.relation}, {"error", f.error}});
    obj["failures"] = std::move(failures);
    obj["skipped"] = result.skipped;
    return obj.dump();
}

}  // namespace entigraph::corpus
