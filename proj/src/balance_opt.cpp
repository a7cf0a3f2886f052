#include "embal/balance_opt.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace embal {

MixingMatrix::MixingMatrix(Eigen::Index rows, Eigen::Index cols, double init, double lower, double upper)
    : values_(Matrix::Constant(rows, cols, init)), lower_(lower), upper_(upper) {
    if (!(lower >= 0.0 && lower < upper && upper <= 1.0))
        throw InvalidArgument("mixing bounds must satisfy 0 <= a_min < a_max <= 1");
    if (!(init >= lower && init <= upper)) throw InvalidArgument("initial mixing value lies outside [a_min, a_max]");
}

void MixingMatrix::assign_clamped(const Matrix& values) {
    if (values.rows() != values_.rows() || values.cols() != values_.cols())
        throw ShapeMismatch("mixing matrix shape mismatch");
    values_ = values.cwiseMax(lower_).cwiseMin(upper_);
}

bool MixingMatrix::feasible() const {
    return (values_.array() >= lower_).all() && (values_.array() <= upper_).all();
}

void BalanceOptConfig::validate() const {
    if (!(tau >= 0.0)) throw InvalidArgument("tau must be >= 0");
    if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
    if (steps < 0) throw InvalidArgument("steps must be >= 0");
    if (!(a_min >= 0.0 && a_min < a_max && a_max <= 1.0))
        throw InvalidArgument("mixing bounds must satisfy 0 <= a_min < a_max <= 1");
    if (!(a_init >= a_min && a_init <= a_max)) throw InvalidArgument("a_init must lie in [a_min, a_max]");
}

Matrix compose(const MixingMatrix& a, const Matrix& joint, const Matrix& wavg) {
    if (joint.rows() != wavg.rows() || joint.cols() != wavg.cols() || a.values().rows() != joint.rows() ||
        a.values().cols() != joint.cols())
        throw ShapeMismatch("compose: mixing matrix and embeddings differ in shape");
    return (a.values().array() * joint.array() + (1.0 - a.values().array()) * wavg.array()).matrix();
}

BalanceProblem::BalanceProblem(const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                               const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg)
    : joint_(joint.values()), wavg_(wavg.values()), direction_(joint.values() - wavg.values()),
      pattern_(weighted_pattern(cooc, cfg.x_max, cfg.alpha)), cfg_(cfg) {
    require_aligned(joint, wavg, "balance optimization");
    if (static_cast<std::size_t>(joint_.rows()) != cooc.dim())
        throw ShapeMismatch("balance optimization: co-occurrence matrix has dimension " + std::to_string(cooc.dim()) +
                            " but the embeddings have " + std::to_string(joint_.rows()) + " rows");
    if (cooc.vocab_hash() != 0 && joint.vocab() && cooc.vocab_hash() != joint.vocab_hash())
        throw ShapeMismatch("balance optimization: co-occurrence matrix is bound to a different vocabulary");
    cfg_.validate();
}

std::pair<ObjectiveValue, Matrix> BalanceProblem::evaluate(const MixingMatrix& a) const {
    const Matrix u = compose(a, joint_, wavg_);
    SymmetricLoss loss = kernels::symmetric_loss(pattern_, u);
    const Matrix offset = u - wavg_;

    ObjectiveValue v;
    v.glove_term = loss.value;
    v.reg_term = cfg_.tau * offset.squaredNorm();
    v.total = v.glove_term + v.reg_term;
    if (!std::isfinite(v.total)) throw NumericalError("balance objective is not finite");

    loss.gradient += (2.0 * cfg_.tau) * offset;
    Matrix grad = (loss.gradient.array() * direction_.array()).matrix();
    return {v, std::move(grad)};
}

ObjectiveValue BalanceProblem::objective(const MixingMatrix& a) const { return evaluate(a).first; }

Matrix BalanceProblem::gradient(const MixingMatrix& a) const { return evaluate(a).second; }

ObjectiveValue objective(const MixingMatrix& a, const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                         const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg) {
    return BalanceProblem(joint, wavg, cooc, cfg).objective(a);
}

Matrix gradient(const MixingMatrix& a, const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg) {
    return BalanceProblem(joint, wavg, cooc, cfg).gradient(a);
}

BalanceResult optimize_balance(const EmbeddingMatrix& joint, const EmbeddingMatrix& wavg,
                               const CooccurrenceMatrix& cooc, const BalanceOptConfig& cfg,
                               const IterateObserver& observer) {
    const BalanceProblem problem(joint, wavg, cooc, cfg);
    const Eigen::Index rows = joint.rows();
    const Eigen::Index cols = joint.dim();

    MixingMatrix a(rows, cols, cfg.a_init, cfg.a_min, cfg.a_max);
    MixingMatrix best = a;
    Matrix m = Matrix::Zero(rows, cols);
    Matrix v = Matrix::Zero(rows, cols);
    double best_value = 0.0;
    int best_step = 0;
    std::vector<TrajectoryPoint> trajectory;
    trajectory.reserve(static_cast<std::size_t>(cfg.steps) + 1);

    double bias1 = 1.0;
    double bias2 = 1.0;
    for (int step = 0;; ++step) {
        if (observer) observer(step, a);
        auto [value, grad] = [&] {
            try {
                return problem.evaluate(a);
            } catch (const NumericalError&) {
                throw NumericalError("balance objective became non-finite at step " + std::to_string(step));
            }
        }();
        trajectory.push_back({step, value});
        if (step == 0 || value.total < best_value) {
            best_value = value.total;
            best = a;
            best_step = step;
        }
        if (step == cfg.steps) break;

        bias1 *= cfg.beta1;
        bias2 *= cfg.beta2;
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseAbs2();
        const double step_size = cfg.learning_rate / (1.0 - bias1);
        const double root_bias2 = std::sqrt(1.0 - bias2);
        const Matrix denom = (v.cwiseSqrt() / root_bias2).array() + cfg.eps;
        a.assign_clamped(a.values() - step_size * m.cwiseQuotient(denom));
    }

    EmbeddingMatrix out(compose(best, problem.joint(), problem.wavg()), joint.vocab(), "tau");
    return {std::move(out), std::move(best), best_step, std::move(trajectory)};
}

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<TrajectoryPoint>& trajectory) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << "step,objective,first_term,reg_term\n";
    char buf[128];
    for (const auto& p : trajectory) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", p.step, p.value.total, p.value.glove_term,
                      p.value.reg_term);
        out << buf;
    }
}

}  // namespace embal
