#include "embal/merge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace embal {

SubsetWeights::SubsetWeights(double small) : small_(small) {
    if (!(small > 0.0 && small < 1.0))
        throw InvalidArgument("subset weight must lie strictly between 0 and 1, got " + std::to_string(small));
}

SubsetWeights subset_weights(std::size_t n_small, std::size_t n_large) {
    if (n_small == 0 || n_large == 0) throw InvalidArgument("subset document counts must be >= 1");
    return SubsetWeights(static_cast<double>(n_large) / static_cast<double>(n_small + n_large));
}

namespace {

std::shared_ptr<const Vocabulary> common_vocab(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.vocab() ? a.vocab() : b.vocab();
}

}  // namespace

EmbeddingMatrix average(const EmbeddingMatrix& small, const EmbeddingMatrix& large) {
    require_aligned(small, large, "average");
    return EmbeddingMatrix(0.5 * (small.values() + large.values()), common_vocab(small, large), "avg");
}

EmbeddingMatrix weighted_average(const EmbeddingMatrix& small, const EmbeddingMatrix& large, SubsetWeights w) {
    require_aligned(small, large, "weighted_average");
    return EmbeddingMatrix(w.small() * small.values() + w.large() * large.values(), common_vocab(small, large),
                           "wavg");
}

EmbeddingMatrix interpolate(const EmbeddingMatrix& a, const EmbeddingMatrix& b, double x) {
    require_aligned(a, b, "interpolate");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("interpolation weight must be in [0, 1]");
    return EmbeddingMatrix(x * a.values() + (1.0 - x) * b.values(), common_vocab(a, b), "interp");
}

EmbeddingMatrix concatenate(const EmbeddingMatrix& small, const EmbeddingMatrix& large) {
    if (small.rows() != large.rows())
        throw ShapeMismatch("concatenate: row counts differ (" + std::to_string(small.rows()) + " vs " +
                            std::to_string(large.rows()) + ")");
    if (small.vocab() && large.vocab() && small.vocab_hash() != large.vocab_hash())
        throw ShapeMismatch("concatenate: embeddings are bound to different vocabularies");
    Matrix out(small.rows(), small.dim() + large.dim());
    out << small.values(), large.values();
    return EmbeddingMatrix(std::move(out), common_vocab(small, large), "con");
}

PcaBasis fit_pca(const Matrix& data, Eigen::Index d_out) {
    const Eigen::Index d_in = data.cols();
    if (d_out < 1 || d_out > d_in)
        throw InvalidArgument("PCA output dimension must be in [1, " + std::to_string(d_in) + "]");
    if (data.rows() < 1) throw InvalidArgument("PCA needs at least one row");

    PcaBasis basis;
    basis.mean = data.colwise().mean().transpose();
    const Matrix centered = data.rowwise() - basis.mean.transpose();
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(data.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericalError("PCA eigendecomposition failed");

    const Eigen::VectorXd& values = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();

    // Sign fix first so the dominant column is well defined for the tie-break.
    std::vector<Eigen::Index> dominant(static_cast<std::size_t>(d_in));
    for (Eigen::Index k = 0; k < d_in; ++k) {
        Eigen::Index arg = 0;
        vectors.col(k).cwiseAbs().maxCoeff(&arg);
        if (vectors(arg, k) < 0.0) vectors.col(k) *= -1.0;
        dominant[static_cast<std::size_t>(k)] = arg;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d_in));
    std::iota(order.begin(), order.end(), 0);
    // Eigenvalues equal up to solver round-off count as ties.
    const double tie_tol = 1e-12 * std::max(1.0, values.cwiseAbs().maxCoeff());
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (std::abs(values[a] - values[b]) > tie_tol) return values[a] > values[b];
        return dominant[static_cast<std::size_t>(a)] < dominant[static_cast<std::size_t>(b)];
    });

    basis.components.resize(d_in, d_out);
    basis.eigenvalues.resize(d_out);
    for (Eigen::Index k = 0; k < d_out; ++k) {
        basis.components.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
        basis.eigenvalues[k] = std::max(0.0, values[order[static_cast<std::size_t>(k)]]);
    }
    return basis;
}

EmbeddingMatrix pca_merge(const EmbeddingMatrix& small, const EmbeddingMatrix& large, Eigen::Index d_out) {
    const EmbeddingMatrix joined = concatenate(small, large);
    const PcaBasis basis = fit_pca(joined.values(), d_out);
    Matrix projected = (joined.values().rowwise() - basis.mean.transpose()) * basis.components;
    return EmbeddingMatrix(std::move(projected), joined.vocab(), "pca");
}

EmbeddingMatrix align_procrustes(const EmbeddingMatrix& source, const EmbeddingMatrix& target) {
    require_aligned(source, target, "align_procrustes");
    const Eigen::MatrixXd cross = source.values().transpose() * target.values();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();
    return EmbeddingMatrix(source.values() * rotation, source.vocab(), source.method());
}

}  // namespace embal
