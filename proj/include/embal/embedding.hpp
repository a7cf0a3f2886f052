#ifndef EMBAL_EMBEDDING_HPP
#define EMBAL_EMBEDDING_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "embal/common.hpp"
#include "embal/corpus.hpp"

namespace embal {

/// V x d word vectors bound to a vocabulary, tagged with the method that produced them.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(Matrix values, std::shared_ptr<const Vocabulary> vocab, std::string method = {});

    [[nodiscard]] const Matrix& values() const { return values_; }
    [[nodiscard]] Matrix& values() { return values_; }
    [[nodiscard]] Eigen::Index rows() const { return values_.rows(); }
    [[nodiscard]] Eigen::Index dim() const { return values_.cols(); }
    [[nodiscard]] const std::shared_ptr<const Vocabulary>& vocab() const { return vocab_; }
    /// 0 when unbound.
    [[nodiscard]] std::uint64_t vocab_hash() const { return vocab_ ? vocab_->hash() : 0; }
    [[nodiscard]] const std::string& method() const { return method_; }
    void set_method(std::string method) { method_ = std::move(method); }

    /// Indices of rows that are entirely zero.
    [[nodiscard]] std::vector<WordId> zero_rows() const;

private:
    Matrix values_;
    std::shared_ptr<const Vocabulary> vocab_;
    std::string method_;
};

/// Throws ShapeMismatch unless both have the same shape and (when bound) the same vocabulary.
void require_aligned(const EmbeddingMatrix& a, const EmbeddingMatrix& b, const char* what);

/// Flat key=value sidecar stored next to every artifact as "<file>.meta".
class Metadata {
public:
    void set(const std::string& key, std::string value) { fields_[key] = std::move(value); }
    [[nodiscard]] std::string get(const std::string& key, const std::string& fallback = {}) const;
    [[nodiscard]] bool has(const std::string& key) const { return fields_.count(key) > 0; }
    [[nodiscard]] const std::map<std::string, std::string>& fields() const { return fields_; }

    void save(const std::filesystem::path& path) const;
    static Metadata load(const std::filesystem::path& path);

private:
    std::map<std::string, std::string> fields_;
};

std::filesystem::path sidecar_path(const std::filesystem::path& artifact);

/// word2vec text format: "V d" header, then "token v1 ... vd" with 9 significant digits.
void write_word2vec(const std::filesystem::path& path, const EmbeddingMatrix& embedding);
EmbeddingMatrix read_word2vec(const std::filesystem::path& path);

}  // namespace embal

#endif  // EMBAL_EMBEDDING_HPP
