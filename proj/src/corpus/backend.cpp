#include "entigraph/corpus/backend.hpp"

#include <cctype>
#include <cstdlib>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

namespace entigraph::corpus {

std::vector<std::string> MockBackend::extract_entities(const Document& doc) {
    std::vector<std::string> entities;
    std::unordered_set<std::string> seen;
    std::string current;
    auto flush = [&] {
        if (!current.empty() && current.front() >= 'A' && current.front() <= 'Z' && seen.insert(current).second)
            entities.push_back(current);
        current.clear();
    };
    for (unsigned char c : doc.text) {
        const bool word = std::isalnum(c) || c >= 0x80;
        if (word) {
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return entities;
}

std::string MockBackend::generate(const Document& doc, std::span<const std::string> entities) {
    std::string names;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (i > 0) names += (i + 1 == entities.size()) ? " and " : ", ";
        names += entities[i];
    }
    return "In " + doc.id + ", " + names + " are related. The article discusses " + names +
           " together and explains how they interact.";
}

HttpBackend::HttpBackend(HttpBackendConfig config, const PromptTemplates& templates)
    : config_(std::move(config)), templates_(&templates) {
    const std::string& url = config_.url;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw std::invalid_argument("backend URL needs a scheme: " + url);
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http") throw std::invalid_argument("only http:// endpoints are supported: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    origin_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (config_.model.empty()) throw std::invalid_argument("backend model name is empty");
}

std::string HttpBackend::complete(const std::string& prompt) const {
    nlohmann::ordered_json body;
    body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_tokens;
    body["messages"] = nlohmann::ordered_json::array({{{"role", "user"}, {"content", prompt}}});

    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    httplib::Headers headers;
    if (!config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw BackendError("backend request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw BackendError("backend returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 500));
    try {
        const auto reply = nlohmann::json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("malformed backend response: ") + e.what());
    }
}

std::vector<std::string> parse_entity_response(const std::string& content) {
    const auto open = content.find('{');
    const auto close = content.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw BackendError("entity response has no JSON object");
    try {
        const auto obj = nlohmann::json::parse(content.substr(open, close - open + 1));
        std::vector<std::string> entities;
        for (const auto& e : obj.at("entities")) entities.push_back(e.get<std::string>());
        return entities;
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("entity response is not valid JSON: ") + e.what());
    }
}

std::vector<std::string> HttpBackend::extract_entities(const Document& doc) {
    return parse_entity_response(complete(render_prompt(PromptKind::EntityExtraction, doc, {}, *templates_)));
}

std::string HttpBackend::generate(const Document& doc, std::span<const std::string> entities) {
    const PromptKind kind = entities.size() == 2 ? PromptKind::RelationPair : PromptKind::RelationTriplet;
    return complete(render_prompt(kind, doc, entities, *templates_));
}

}  // namespace entigraph::corpus
