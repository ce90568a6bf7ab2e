#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entigraph::corpus {

class CorpusError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

/// Lowercases ASCII letters and splits on whitespace and ASCII punctuation.
/// Bytes >= 0x80 stay inside tokens, so UTF-8 text is never cut mid-character.
std::vector<std::string> default_tokenize(std::string_view text);

const Tokenizer& default_tokenizer();

struct Document {
    std::string id;
    std::string text;
    std::size_t token_count = 0;

    static Document make(std::string id, std::string text, const Tokenizer& tokenizer = default_tokenizer());
};

/// One {"id": ..., "text": ...} object per line; blank lines are skipped.
std::vector<Document> read_jsonl(std::istream& in, const Tokenizer& tokenizer = default_tokenizer());
std::vector<Document> read_jsonl_file(const std::filesystem::path& path,
                                      const Tokenizer& tokenizer = default_tokenizer());
void write_jsonl(std::ostream& out, const std::vector<Document>& docs);

/// Normalization applied before shingling: drop ASCII punctuation and digits,
/// lowercase ASCII letters. Idempotent.
std::string normalize_for_shingles(std::string_view text);

/// Whitespace tokens of normalize_for_shingles(text).
std::vector<std::string> shingle_tokens(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);

}  // namespace entigraph::corpus
