#include "entigraph/corpus/prompts.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace entigraph::corpus {

std::size_t prompt_arity(PromptKind kind) {
    switch (kind) {
        case PromptKind::EntityExtraction: return 0;
        case PromptKind::RelationPair: return 2;
        case PromptKind::RelationTriplet: return 3;
    }
    return 0;
}

std::string_view prompt_kind_name(PromptKind kind) {
    switch (kind) {
        case PromptKind::EntityExtraction: return "entity_extraction";
        case PromptKind::RelationPair: return "relation_pair";
        case PromptKind::RelationTriplet: return "relation_triplet";
    }
    return "unknown";
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
    PromptTemplates templates;
    for (auto kind : {PromptKind::EntityExtraction, PromptKind::RelationPair, PromptKind::RelationTriplet}) {
        const auto path = dir / (std::string(prompt_kind_name(kind)) + ".txt");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw CorpusError("missing prompt template " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        templates.texts_[static_cast<std::size_t>(kind)] = ss.str();
    }
    return templates;
}

const PromptTemplates& PromptTemplates::bundled() {
    static const PromptTemplates templates = [] {
        const char* env = std::getenv("ENTIGRAPH_PROMPT_DIR");
        return load(env && *env ? std::filesystem::path(env) : std::filesystem::path(ENTIGRAPH_PROMPT_DIR));
    }();
    return templates;
}

std::string render_prompt(PromptKind kind, const Document& doc, std::span<const std::string> entity_names,
                          const PromptTemplates& templates) {
    if (entity_names.size() != prompt_arity(kind))
        throw std::invalid_argument(std::string(prompt_kind_name(kind)) + " takes " +
                                    std::to_string(prompt_arity(kind)) + " entities, got " +
                                    std::to_string(entity_names.size()));
    const std::string& tpl = templates.text(kind);
    auto slot_value = [&](std::string_view name) -> const std::string* {
        if (name == "document") return &doc.text;
        if (name.size() == 7 && name.substr(0, 6) == "entity" && name[6] >= '1' && name[6] <= '3') {
            const std::size_t idx = static_cast<std::size_t>(name[6] - '1');
            if (idx < entity_names.size()) return &entity_names[idx];
        }
        return nullptr;
    };

    std::string out;
    out.reserve(tpl.size() + doc.text.size());
    std::size_t pos = 0;
    while (pos < tpl.size()) {
        const auto open = tpl.find('{', pos);
        if (open == std::string::npos) break;
        const auto close = tpl.find('}', open + 1);
        if (close == std::string::npos) break;
        out.append(tpl, pos, open - pos);
        const std::string_view name(tpl.data() + open + 1, close - open - 1);
        if (const auto* value = slot_value(name)) {
            out += *value;
            pos = close + 1;
        } else {
            out.push_back('{');
            pos = open + 1;
        }
    }
    out.append(tpl, pos, std::string::npos);
    return out;
}

}  // namespace entigraph::corpus
