#include "embal/glove.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>

#include "embal/rng.hpp"

namespace embal {

void GloveConfig::validate() const {
    if (dim < 1) throw InvalidArgument("glove dim must be >= 1");
    if (!(x_max > 0.0)) throw InvalidArgument("glove x_max must be > 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("glove alpha must be in (0, 1]");
    if (epochs < 0) throw InvalidArgument("glove epochs must be >= 0");
    if (!(learning_rate > 0.0)) throw InvalidArgument("glove learning rate must be > 0");
}

double glove_weight(double y, double x_max, double alpha) {
    if (y <= 0.0) return 0.0;
    if (y >= x_max) return 1.0;
    return std::pow(y / x_max, alpha);
}

GloveModel init_glove(std::size_t vocab_size, const GloveConfig& cfg) {
    cfg.validate();
    const auto v = static_cast<Eigen::Index>(vocab_size);
    GloveModel m;
    m.config = cfg;
    m.word.resize(v, cfg.dim);
    m.context.resize(v, cfg.dim);
    m.word_bias.resize(v);
    m.context_bias.resize(v);

    Rng rng(cfg.seed);
    const double scale = 1.0 / cfg.dim;
    auto draw = [&] { return (uniform_unit(rng) - 0.5) * scale; };
    for (Eigen::Index r = 0; r < v; ++r)
        for (Eigen::Index c = 0; c < cfg.dim; ++c) m.word(r, c) = draw();
    for (Eigen::Index r = 0; r < v; ++r)
        for (Eigen::Index c = 0; c < cfg.dim; ++c) m.context(r, c) = draw();
    for (Eigen::Index r = 0; r < v; ++r) m.word_bias[r] = draw();
    for (Eigen::Index r = 0; r < v; ++r) m.context_bias[r] = draw();
    return m;
}

namespace {

// One ordered training cell (row word, column context).
struct Cell {
    WordId row;
    WordId col;
    double weight;
    double log_y;
};

struct AdaGradState {
    Matrix word_sq;
    Matrix context_sq;
    Vector word_bias_sq;
    Vector context_bias_sq;
};

// Relaxed atomic access keeps the lock-free multi-threaded epoch free of data races
// at the language level; on mainstream targets it compiles to plain loads and stores.
inline double load(double& x) { return std::atomic_ref<double>(x).load(std::memory_order_relaxed); }
inline void store(double& x, double v) { std::atomic_ref<double>(x).store(v, std::memory_order_relaxed); }

template <bool Shared>
double update_cell(GloveModel& m, AdaGradState& s, const Cell& cell, double eta) {
    const auto i = static_cast<Eigen::Index>(cell.row);
    const auto j = static_cast<Eigen::Index>(cell.col);
    const Eigen::Index d = m.word.cols();
    double* w = m.word.row(i).data();
    double* c = m.context.row(j).data();
    double* wsq = s.word_sq.row(i).data();
    double* csq = s.context_sq.row(j).data();

    auto get = [](double& x) { return Shared ? load(x) : x; };
    auto put = [](double& x, double v) {
        if constexpr (Shared) store(x, v);
        else x = v;
    };

    double diff = get(m.word_bias[i]) + get(m.context_bias[j]) - cell.log_y;
    for (Eigen::Index k = 0; k < d; ++k) diff += get(w[k]) * get(c[k]);
    const double loss = cell.weight * diff * diff;
    const double fdiff = eta * cell.weight * diff;

    for (Eigen::Index k = 0; k < d; ++k) {
        const double wk = get(w[k]);
        const double ck = get(c[k]);
        const double gw = fdiff * ck;
        const double gc = fdiff * wk;
        put(w[k], wk - gw / std::sqrt(get(wsq[k])));
        put(c[k], ck - gc / std::sqrt(get(csq[k])));
        put(wsq[k], get(wsq[k]) + gw * gw);
        put(csq[k], get(csq[k]) + gc * gc);
    }
    put(m.word_bias[i], get(m.word_bias[i]) - fdiff / std::sqrt(get(s.word_bias_sq[i])));
    put(m.context_bias[j], get(m.context_bias[j]) - fdiff / std::sqrt(get(s.context_bias_sq[j])));
    put(s.word_bias_sq[i], get(s.word_bias_sq[i]) + fdiff * fdiff);
    put(s.context_bias_sq[j], get(s.context_bias_sq[j]) + fdiff * fdiff);
    return loss;
}

std::vector<Cell> ordered_cells(const CooccurrenceMatrix& cooc, const GloveConfig& cfg) {
    std::vector<Cell> cells;
    cells.reserve(2 * cooc.nnz());
    for (const auto& e : cooc.entries()) {
        const double f = glove_weight(e.weight, cfg.x_max, cfg.alpha);
        const double ly = std::log(e.weight);
        cells.push_back({e.i, e.j, f, ly});
        if (e.i != e.j) cells.push_back({e.j, e.i, f, ly});
    }
    return cells;
}

}  // namespace

GloveModel train_glove(const CooccurrenceMatrix& cooc, const GloveConfig& cfg, const EpochObserver& observer) {
    cfg.validate();
    if (cooc.empty()) throw InvalidArgument("cannot train GloVe on an empty co-occurrence matrix");

    GloveModel model = init_glove(cooc.dim(), cfg);
    AdaGradState state;
    state.word_sq = Matrix::Ones(model.word.rows(), model.word.cols());
    state.context_sq = Matrix::Ones(model.context.rows(), model.context.cols());
    state.word_bias_sq = Vector::Ones(model.word_bias.size());
    state.context_bias_sq = Vector::Ones(model.context_bias.size());

    std::vector<Cell> cells = ordered_cells(cooc, cfg);
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const int n_threads = threads();

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        shuffle(cells, rng);
        double running = 0.0;
        if (n_threads == 1) {
            for (const auto& cell : cells) running += update_cell<false>(model, state, cell, cfg.learning_rate);
        } else {
            const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(static) reduction(+ : running)
            for (std::ptrdiff_t k = 0; k < n; ++k)
                running += update_cell<true>(model, state, cells[static_cast<std::size_t>(k)], cfg.learning_rate);
        }
        if (!std::isfinite(running))
            throw NumericalError("GloVe loss became non-finite in epoch " + std::to_string(epoch));
        if (observer) observer(epoch, glove_loss(model, cooc));
    }
    return model;
}

EmbeddingMatrix export_embedding(const GloveModel& model, ExportMode mode, std::shared_ptr<const Vocabulary> vocab,
                                 std::string method) {
    Matrix rows = mode == ExportMode::sum ? Matrix(model.word + model.context) : model.word;
    return EmbeddingMatrix(std::move(rows), std::move(vocab), std::move(method));
}

double glove_loss(const GloveModel& model, const CooccurrenceMatrix& cooc) {
    if (static_cast<std::size_t>(model.word.rows()) != cooc.dim())
        throw ShapeMismatch("GloVe model and co-occurrence matrix disagree in vocabulary size");
    double total = 0.0;
    auto term = [&](WordId i, WordId j, double f, double ly) {
        const double diff = model.word.row(i).dot(model.context.row(j)) + model.word_bias[i] +
                            model.context_bias[j] - ly;
        return f * diff * diff;
    };
    for (const auto& e : cooc.entries()) {
        const double f = glove_weight(e.weight, model.config.x_max, model.config.alpha);
        const double ly = std::log(e.weight);
        total += term(e.i, e.j, f, ly);
        if (e.i != e.j) total += term(e.j, e.i, f, ly);
    }
    return total;
}

WeightedPattern weighted_pattern(const CooccurrenceMatrix& cooc, double x_max, double alpha) {
    std::vector<WordId> row, col;
    std::vector<double> weight, log_y;
    row.reserve(cooc.nnz());
    col.reserve(cooc.nnz());
    weight.reserve(cooc.nnz());
    log_y.reserve(cooc.nnz());
    for (const auto& e : cooc.entries()) {
        row.push_back(e.i);
        col.push_back(e.j);
        weight.push_back(glove_weight(e.weight, x_max, alpha));
        log_y.push_back(std::log(e.weight));
    }
    return make_pattern(cooc.dim(), row, col, weight, log_y);
}

double glove_loss(const Matrix& u, const CooccurrenceMatrix& cooc, const GloveConfig& cfg) {
    if (static_cast<std::size_t>(u.rows()) != cooc.dim())
        throw ShapeMismatch("embedding and co-occurrence matrix disagree in vocabulary size");
    double total = 0.0;
    for (const auto& e : cooc.entries()) {
        const double diff = u.row(e.i).dot(u.row(e.j)) - std::log(e.weight);
        const double term = glove_weight(e.weight, cfg.x_max, cfg.alpha) * diff * diff;
        total += e.i == e.j ? term : 2.0 * term;
    }
    return total;
}

}  // namespace embal
