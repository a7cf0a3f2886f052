#ifndef EMBAL_GLOVE_HPP
#define EMBAL_GLOVE_HPP

#include <cstdint>
#include <functional>

#include "embal/common.hpp"
#include "embal/cooccur.hpp"
#include "embal/embedding.hpp"
#include "embal/kernels.hpp"

namespace embal {

struct GloveConfig {
    int dim = 50;
    double x_max = 100.0;
    double alpha = 0.75;
    int epochs = 25;
    double learning_rate = 0.05;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Word vectors W, context vectors C and their biases.
struct GloveModel {
    Matrix word;
    Matrix context;
    Vector word_bias;
    Vector context_bias;
    GloveConfig config;
};

/// f(y) = (y / x_max)^alpha below x_max, 1 at or above it, 0 at y = 0.
double glove_weight(double y, double x_max, double alpha);

/// Uniform in [-0.5/d, 0.5/d] for vectors and biases, drawn from `cfg.seed`.
GloveModel init_glove(std::size_t vocab_size, const GloveConfig& cfg);

/// Called after every epoch with the 1-based epoch number and the exact loss of the current model.
using EpochObserver = std::function<void(int epoch, double loss)>;

/// AdaGrad over the shuffled ordered cells of Y (both orientations of each off-diagonal
/// cell). Bit-reproducible when run with one thread; with more threads the updates
/// interleave lock-free and no determinism is promised.
GloveModel train_glove(const CooccurrenceMatrix& cooc, const GloveConfig& cfg, const EpochObserver& observer = {});

enum class ExportMode { word_only, sum };

/// Rows are W (word_only) or W + C (sum).
EmbeddingMatrix export_embedding(const GloveModel& model, ExportMode mode,
                                 std::shared_ptr<const Vocabulary> vocab = nullptr, std::string method = {});

/// Baseline objective: sum over ordered cells of f(Y_ij) (w_i.c_j + b_i + b~_j - log Y_ij)^2.
double glove_loss(const GloveModel& model, const CooccurrenceMatrix& cooc);

/// Bias-free symmetric objective: sum over ordered cells of f(Y_ij) (u_i.u_j - log Y_ij)^2.
double glove_loss(const Matrix& u, const CooccurrenceMatrix& cooc, const GloveConfig& cfg);

/// f(Y) and log Y of every stored cell, laid out for the symmetric-loss kernels.
WeightedPattern weighted_pattern(const CooccurrenceMatrix& cooc, double x_max, double alpha);

}  // namespace embal

#endif  // EMBAL_GLOVE_HPP
