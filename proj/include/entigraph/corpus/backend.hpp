#pragma once

#include <chrono>
#include <span>
#include <string>
#include <vector>

#include "entigraph/corpus/document.hpp"
#include "entigraph/corpus/prompts.hpp"

namespace entigraph::corpus {

class BackendError : public CorpusError {
  public:
    using CorpusError::CorpusError;
};

/// A text generator behind entity extraction and relation analysis.
/// Implementations must tolerate concurrent calls from several threads.
class SynthesisBackend {
  public:
    virtual ~SynthesisBackend() = default;

    virtual std::string name() const = 0;
    /// Raw entity names for a document. Throws BackendError on failure.
    virtual std::vector<std::string> extract_entities(const Document& doc) = 0;
    /// Text relating two or three entities of a document.
    virtual std::string generate(const Document& doc, std::span<const std::string> entities) = 0;
};

/// Deterministic stand-in: entities are the capitalized tokens of the text,
/// relation text is a fixed template naming the entities.
class MockBackend final : public SynthesisBackend {
  public:
    std::string name() const override { return "mock"; }
    std::vector<std::string> extract_entities(const Document& doc) override;
    std::string generate(const Document& doc, std::span<const std::string> entities) override;
};

struct HttpBackendConfig {
    /// Full endpoint URL, e.g. http://localhost:8000/v1/chat/completions
    std::string url;
    std::string model;
    double temperature = 1.0;
    int max_tokens = 2048;
    /// Bearer token is read from this variable at request time, never stored.
    std::string api_key_env = "ENTIGRAPH_API_KEY";
    std::chrono::seconds timeout{120};
};

/// Chat-completions style JSON endpoint. Request:
///   {"model", "temperature", "max_tokens", "messages": [{"role": "user", "content": <prompt>}]}
/// Response: {"choices": [{"message": {"content": <text>}}]}.
/// Entity extraction expects the content to be the JSON object
/// {"summary": ..., "entities": [...]}, optionally inside a ``` fence.
class HttpBackend final : public SynthesisBackend {
  public:
    explicit HttpBackend(HttpBackendConfig config, const PromptTemplates& templates = PromptTemplates::bundled());

    std::string name() const override { return "http:" + config_.model; }
    std::vector<std::string> extract_entities(const Document& doc) override;
    std::string generate(const Document& doc, std::span<const std::string> entities) override;

    /// Sends one prompt and returns the completion text.
    std::string complete(const std::string& prompt) const;

  private:
    HttpBackendConfig config_;
    const PromptTemplates* templates_;
    std::string origin_;
    std::string path_;
};

/// Pulls the entity list out of a completion; accepts surrounding prose or a
/// code fence around the JSON object.
std::vector<std::string> parse_entity_response(const std::string& content);

}  // namespace entigraph::corpus
