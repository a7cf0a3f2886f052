#ifndef EMBAL_BALANCE_OPT_HPP
#define EMBAL_BALANCE_OPT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "embal/cooccur.hpp"
#include "embal/embedding.hpp"
#include "embal/glove.hpp"

namespace embal {

/// Element-wise mixing coefficients A, each confined to [lower, upper].
class MixingMatrix {
public:
    MixingMatrix(Eigen::Index rows, Eigen::Index cols, double init, double lower = 0.0, double upper = 1.0);

    [[nodiscard]] const Matrix& values() const { return values_; }
    [[nodiscard]] double lower() const { return lower_; }
    [[nodiscard]] double upper() const { return upper_; }
    /// Replaces the values and clamps them into the box.
    void assign_clamped(const Matrix& values);
    [[nodiscard]] bool feasible() const;

private:
    Matrix values_;
    double lower_;
    double upper_;
};

struct BalanceOptConfig {
    double tau = 10.0;
    double learning_rate = 1e-3;
    int steps = 10000;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double a_min = 0.0;
    double a_max = 1.0;
    double a_init = 0.5;
    std::uint64_t seed = 1;
    double x_max = 100.0;
    double alpha = 0.75;

    void validate() const;
};

/// U = A * joint + (1 - A) * wavg, element-wise.
Matrix compose(const MixingMatrix& a, const Matrix& joint, const Matrix& wavg);

struct ObjectiveValue {
    double total = 0.0;
    double glove_term = 0.0;
    double reg_term = 0.0;
};

/// Precomputed problem data shared by objective, gradient and the optimizer.
class BalanceProblem {
public:
    BalanceProblem(const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg, const CooccurrenceMatrix& cooc,
                   const BalanceOptConfig& cfg);

    [[nodiscard]] ObjectiveValue objective(const MixingMatrix& a) const;
    /// d objective / d A.
    [[nodiscard]] Matrix gradient(const MixingMatrix& a) const;
    /// Both at once; avoids evaluating the loss kernel twice.
    [[nodiscard]] std::pair<ObjectiveValue, Matrix> evaluate(const MixingMatrix& a) const;

    [[nodiscard]] const Matrix& joint() const { return joint_; }
    [[nodiscard]] const Matrix& wavg() const { return wavg_; }
    [[nodiscard]] const BalanceOptConfig& config() const { return cfg_; }

private:
    Matrix joint_;
    Matrix wavg_;
    Matrix direction_;  // joint - wavg, i.e. dU/dA
    WeightedPattern pattern_;
    BalanceOptConfig cfg_;
};

ObjectiveValue objective(const MixingMatrix& a, const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                         const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg);
Matrix gradient(const MixingMatrix& a, const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg);

struct TrajectoryPoint {
    int step = 0;
    ObjectiveValue value;
};

struct BalanceResult {
    EmbeddingMatrix embedding;
    MixingMatrix mixing;
    int best_step = 0;
    std::vector<TrajectoryPoint> trajectory;  // steps + 1 points, starting at the initial A
};

/// Sees every iterate (step 0 is the initial A).
using IterateObserver = std::function<void(int step, const MixingMatrix& a)>;

/// Projected Adam on A for exactly cfg.steps full-batch steps; returns the best iterate.
BalanceResult optimize_balance(const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                               const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg,
                               const IterateObserver& observer = {});

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<TrajectoryPoint>& trajectory);

}  // namespace embal

#endif  // EMBAL_BALANCE_OPT_HPP
