#ifndef EMBAL_MERGE_HPP
#define EMBAL_MERGE_HPP

#include <cstddef>

#include "embal/embedding.hpp"

namespace embal {

/// Convex weights of the small and large subset; both strictly positive, summing to 1.
class SubsetWeights {
public:
    explicit SubsetWeights(double small);

    [[nodiscard]] double small() const { return small_; }
    [[nodiscard]] double large() const { return 1.0 - small_; }

private:
    double small_;
};

/// Inverse-proportion rule: the small subset gets n_large / (n_small + n_large).
SubsetWeights subset_weights(std::size_t n_small, std::size_t n_large);

EmbeddingMatrix average(const EmbeddingMatrix& small, const EmbeddingMatrix& large);
EmbeddingMatrix weighted_average(const EmbeddingMatrix& small, const EmbeddingMatrix& large, SubsetWeights w);
/// Row-wise [small | large].
EmbeddingMatrix concatenate(const EmbeddingMatrix& small, const EmbeddingMatrix& large);
/// x * a + (1 - x) * b.
EmbeddingMatrix interpolate(const EmbeddingMatrix& a, const EmbeddingMatrix& b, double x);

/// Principal axes of a column-centered data matrix.
struct PcaBasis {
    Vector mean;          // column means removed before projecting
    Matrix components;    // d_in x d_out, orthonormal columns
    Vector eigenvalues;   // descending, length d_out
};

/// Top-d_out principal directions. Ties in eigenvalue keep the order of the dominant
/// input column; each component's largest-magnitude loading is made positive.
PcaBasis fit_pca(const Matrix& data, Eigen::Index d_out);

/// Concatenates, centers, and projects onto the top-d_out principal directions.
EmbeddingMatrix pca_merge(const EmbeddingMatrix& small, const EmbeddingMatrix& large, Eigen::Index d_out);

/// Orthogonal Procrustes: rotates `source` onto `target` (min ||source R - target||_F).
/// Not applied by any merge by default.
EmbeddingMatrix align_procrustes(const EmbeddingMatrix& source, const EmbeddingMatrix& target);

}  // namespace embal

#endif  // EMBAL_MERGE_HPP
