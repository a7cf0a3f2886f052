// Random instances shared by the unit and acceptance tests.
#ifndef EMBAL_TESTS_FIXTURES_HPP
#define EMBAL_TESTS_FIXTURES_HPP

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "embal/cooccur.hpp"
#include "embal/embedding.hpp"
#include "embal/rng.hpp"

namespace test {

inline embal::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, embal::Rng& rng, double lo = -1.0,
                                   double hi = 1.0) {
    embal::Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = lo + (hi - lo) * embal::uniform_unit(rng);
    return m;
}

/// Symmetric matrix with each upper cell present with probability `density`, weights in (0.5, 150).
inline embal::CooccurrenceMatrix random_cooccurrence(std::size_t v, double density, embal::Rng& rng) {
    std::vector<embal::CooccurrenceEntry> entries;
    for (embal::WordId i = 0; i < v; ++i)
        for (embal::WordId j = i; j < v; ++j)
            if (embal::uniform_unit(rng) < density) entries.push_back({i, j, 0.5 + 149.5 * embal::uniform_unit(rng)});
    if (entries.empty()) entries.push_back({0, 0, 3.0});
    return embal::CooccurrenceMatrix::from_weights(v, 5, 0, entries);
}

inline std::shared_ptr<const embal::Vocabulary> numbered_vocab(std::size_t v) {
    std::vector<std::string> tokens;
    for (std::size_t k = 0; k < v; ++k) tokens.push_back("w" + std::to_string(k));
    return std::make_shared<const embal::Vocabulary>(embal::Vocabulary::from_tokens(tokens));
}

inline embal::EmbeddingMatrix embedding(embal::Matrix values, std::shared_ptr<const embal::Vocabulary> vocab = nullptr) {
    if (!vocab) vocab = numbered_vocab(static_cast<std::size_t>(values.rows()));
    return embal::EmbeddingMatrix(std::move(values), std::move(vocab));
}

/// Y_ij = exp(w_i . w_j + b_i + b_j) for all i <= j: exactly representable by a biased GloVe model.
inline embal::CooccurrenceMatrix planted_cooccurrence(std::size_t v, int d, embal::Rng& rng) {
    const embal::Matrix w = random_matrix(static_cast<Eigen::Index>(v), d, rng, -0.4, 0.4);
    const embal::Matrix b = random_matrix(static_cast<Eigen::Index>(v), 1, rng, 1.0, 2.5);
    std::vector<embal::CooccurrenceEntry> entries;
    for (embal::WordId i = 0; i < v; ++i)
        for (embal::WordId j = i; j < v; ++j)
            entries.push_back({i, j, std::exp(w.row(i).dot(w.row(j)) + b(i, 0) + b(j, 0))});
    return embal::CooccurrenceMatrix::from_weights(v, 5, 0, entries);
}

}  // namespace test

#endif  // EMBAL_TESTS_FIXTURES_HPP
