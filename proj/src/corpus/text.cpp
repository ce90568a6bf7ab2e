#include "entigraph/corpus/document.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace entigraph::corpus {

namespace {

bool is_ascii_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }
bool is_ascii_punct(unsigned char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}
char ascii_lower(unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c); }

}  // namespace

std::vector<std::string> default_tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_ascii_space(c) || is_ascii_punct(c)) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ascii_lower(c));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

const Tokenizer& default_tokenizer() {
    static const Tokenizer tokenizer = default_tokenize;
    return tokenizer;
}

Document Document::make(std::string id, std::string text, const Tokenizer& tokenizer) {
    Document doc{std::move(id), std::move(text), 0};
    doc.token_count = tokenizer(doc.text).size();
    return doc;
}

std::vector<Document> read_jsonl(std::istream& in, const Tokenizer& tokenizer) {
    std::vector<Document> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw CorpusError("JSONL line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") || !obj["text"].is_string())
            throw CorpusError("JSONL line " + std::to_string(lineno) + ": expected {\"id\", \"text\"}");
        const auto& id = obj["id"];
        docs.push_back(Document::make(id.is_string() ? id.get<std::string>() : id.dump(),
                                      obj["text"].get<std::string>(), tokenizer));
    }
    return docs;
}

std::vector<Document> read_jsonl_file(const std::filesystem::path& path, const Tokenizer& tokenizer) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open " + path.string());
    return read_jsonl(in, tokenizer);
}

void write_jsonl(std::ostream& out, const std::vector<Document>& docs) {
    for (const auto& doc : docs) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        obj["text"] = doc.text;
        out << obj.dump() << '\n';
    }
}

std::string normalize_for_shingles(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        if (is_ascii_punct(c) || (c >= '0' && c <= '9')) continue;
        out.push_back(ascii_lower(c));
    }
    return out;
}

std::vector<std::string> shingle_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : normalize_for_shingles(text)) {
        if (is_ascii_space(c)) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(static_cast<char>(c));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace entigraph::corpus
