#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>

#include "entigraph/corpus/document.hpp"

namespace entigraph::corpus {

enum class PromptKind { EntityExtraction, RelationPair, RelationTriplet };

/// Number of entity names a prompt kind takes: 0, 2 or 3.
std::size_t prompt_arity(PromptKind kind);
std::string_view prompt_kind_name(PromptKind kind);

/// UTF-8 templates with {document}, {entity1}, {entity2}, {entity3} slots,
/// one file per kind: entity_extraction.txt, relation_pair.txt,
/// relation_triplet.txt.
class PromptTemplates {
  public:
    static PromptTemplates load(const std::filesystem::path& dir);
    /// Templates shipped with the library; ENTIGRAPH_PROMPT_DIR overrides
    /// the install location.
    static const PromptTemplates& bundled();

    const std::string& text(PromptKind kind) const { return texts_[static_cast<std::size_t>(kind)]; }

  private:
    std::array<std::string, 3> texts_;
};

/// Substitutes the slots in one pass; substituted text is never rescanned.
/// Throws std::invalid_argument when entity_names.size() != prompt_arity(kind).
std::string render_prompt(PromptKind kind, const Document& doc, std::span<const std::string> entity_names,
                          const PromptTemplates& templates = PromptTemplates::bundled());

}  // namespace entigraph::corpus
