#ifndef EMBAL_CORPUS_HPP
#define EMBAL_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "embal/common.hpp"

namespace embal {

struct Document {
    std::string id;
    std::string label;
    std::string text;
};

/// Ordered collection of labeled documents. Order is the insertion (file) order.
class DocumentSet {
public:
    DocumentSet() = default;
    explicit DocumentSet(std::vector<Document> documents);

    void add(Document doc);

    [[nodiscard]] const std::vector<Document>& documents() const { return documents_; }
    [[nodiscard]] std::size_t size() const { return documents_.size(); }
    [[nodiscard]] std::set<std::string> labels() const;
    [[nodiscard]] std::size_t count(std::string_view label) const;
    /// Documents carrying `label`, in order.
    [[nodiscard]] DocumentSet subset(std::string_view label) const;

private:
    std::vector<Document> documents_;
    std::set<std::string> ids_;
};

/// Reads one file per subset; each line is a document and the label is the file stem.
DocumentSet read_corpus(const std::vector<std::filesystem::path>& files);

/// Lowercases ASCII letters and splits on every non-alphanumeric byte.
std::vector<std::string> tokenize(std::string_view text);

/// Dense token <-> index map, ordered by descending count then lexicographically.
class Vocabulary {
public:
    static constexpr WordId npos = static_cast<WordId>(-1);

    Vocabulary() = default;

    /// Binding-only vocabulary (e.g. read back from an embedding file); counts are zero.
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    [[nodiscard]] std::size_t size() const { return tokens_.size(); }
    [[nodiscard]] const std::vector<std::string>& tokens() const { return tokens_; }
    [[nodiscard]] const std::string& token(WordId id) const { return tokens_.at(id); }
    [[nodiscard]] std::uint64_t count(WordId id) const { return counts_.at(id); }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const { return counts_; }
    [[nodiscard]] std::uint64_t min_count() const { return min_count_; }
    [[nodiscard]] WordId find(std::string_view token) const;
    [[nodiscard]] bool contains(std::string_view token) const { return find(token) != npos; }
    /// Identity of the token list; two embeddings are index-aligned iff hashes match.
    [[nodiscard]] std::uint64_t hash() const { return hash_; }

    void save(const std::filesystem::path& path) const;
    static Vocabulary load(const std::filesystem::path& path);

private:
    friend Vocabulary build_vocabulary(const DocumentSet&, std::uint64_t);
    Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts,
               std::uint64_t min_count);

    std::vector<std::string> tokens_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::string, WordId> index_;
    std::uint64_t min_count_ = 0;
    std::uint64_t hash_ = 0;
};

/// Counts tokens over every subset jointly and keeps those with count >= min_count.
Vocabulary build_vocabulary(const DocumentSet& docs, std::uint64_t min_count);

/// Duplicates the documents labeled `label` until exactly `target_count` carry it.
/// Whole copies first; the remainder is a seeded draw without replacement. The
/// added copies are appended after the original documents, ids suffixed "#k".
DocumentSet upsample(const DocumentSet& docs, std::string_view label, std::size_t target_count,
                     std::uint64_t seed);

/// Token ids of one document, OOV tokens mapped to Vocabulary::npos (positions kept).
std::vector<WordId> encode(const Vocabulary& vocab, std::string_view text);

}  // namespace embal

#endif  // EMBAL_CORPUS_HPP
