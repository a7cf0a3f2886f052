#include "embal/embedding.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace embal {

EmbeddingMatrix::EmbeddingMatrix(Matrix values, std::shared_ptr<const Vocabulary> vocab, std::string method)
    : values_(std::move(values)), vocab_(std::move(vocab)), method_(std::move(method)) {
    if (vocab_ && static_cast<std::size_t>(values_.rows()) != vocab_->size())
        throw ShapeMismatch("embedding has " + std::to_string(values_.rows()) + " rows but the vocabulary has " +
                            std::to_string(vocab_->size()) + " tokens");
}

std::vector<WordId> EmbeddingMatrix::zero_rows() const {
    std::vector<WordId> out;
    for (Eigen::Index r = 0; r < values_.rows(); ++r)
        if (values_.row(r).isZero(0.0)) out.push_back(static_cast<WordId>(r));
    return out;
}

void require_aligned(const EmbeddingMatrix& a, const EmbeddingMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.dim() != b.dim())
        throw ShapeMismatch(std::string(what) + ": shapes differ (" + std::to_string(a.rows()) + "x" +
                            std::to_string(a.dim()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.dim()) + ")");
    if (a.vocab() && b.vocab() && a.vocab_hash() != b.vocab_hash())
        throw ShapeMismatch(std::string(what) + ": embeddings are bound to different vocabularies");
}

std::string Metadata::get(const std::string& key, const std::string& fallback) const {
    const auto it = fields_.find(key);
    return it == fields_.end() ? fallback : it->second;
}

void Metadata::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
}

Metadata Metadata::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path.string());
    Metadata m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError(path.string() + ": expected key=value, got '" + line + "'");
        m.fields_[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

std::filesystem::path sidecar_path(const std::filesystem::path& artifact) {
    auto p = artifact;
    p += ".meta";
    return p;
}

void write_word2vec(const std::filesystem::path& path, const EmbeddingMatrix& embedding) {
    if (!embedding.vocab()) throw InvalidArgument("cannot write an embedding without a vocabulary");
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << embedding.rows() << ' ' << embedding.dim() << '\n';
    char buf[32];
    std::string line;
    for (Eigen::Index r = 0; r < embedding.rows(); ++r) {
        line = embedding.vocab()->token(static_cast<WordId>(r));
        for (Eigen::Index c = 0; c < embedding.dim(); ++c) {
            std::snprintf(buf, sizeof buf, " %.9g", embedding.values()(r, c));
            line += buf;
        }
        line += '\n';
        out << line;
    }
}

EmbeddingMatrix read_word2vec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path.string());
    std::string line;
    Eigen::Index rows = 0;
    Eigen::Index dim = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> rows >> dim) || rows < 0 || dim < 1)
        throw FormatError(path.string() + ": expected header 'V d'");

    Matrix values(rows, dim);
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(rows));
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) throw FormatError(path.string() + ": truncated after " + std::to_string(r) + " rows");
        std::istringstream fields(line);
        std::string token;
        fields >> token;
        for (Eigen::Index c = 0; c < dim; ++c)
            if (!(fields >> values(r, c)))
                throw FormatError(path.string() + ":" + std::to_string(r + 2) + ": expected " + std::to_string(dim) +
                                  " values");
        tokens.push_back(std::move(token));
    }
    auto vocab = std::make_shared<const Vocabulary>(Vocabulary::from_tokens(std::move(tokens)));
    std::string method;
    if (std::filesystem::exists(sidecar_path(path))) method = Metadata::load(sidecar_path(path)).get("method");
    return EmbeddingMatrix(std::move(values), std::move(vocab), std::move(method));
}

}  // namespace embal
