#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "embal/kernels.hpp"

namespace embal {

WeightedPattern make_pattern(std::size_t dim, std::span<const WordId> row, std::span<const WordId> col,
                             std::span<const double> weight, std::span<const double> log_y) {
    WeightedPattern p;
    p.dim = dim;
    p.row.assign(row.begin(), row.end());
    p.col.assign(col.begin(), col.end());
    p.weight.assign(weight.begin(), weight.end());
    p.log_y.assign(log_y.begin(), log_y.end());

    std::vector<std::size_t> degree(dim, 0);
    for (std::size_t c = 0; c < p.row.size(); ++c) {
        ++degree[p.row[c]];
        if (p.row[c] != p.col[c]) ++degree[p.col[c]];
    }
    p.csr_offset.assign(dim + 1, 0);
    std::partial_sum(degree.begin(), degree.end(), p.csr_offset.begin() + 1);
    p.csr_col.resize(p.csr_offset.back());
    p.csr_cell.resize(p.csr_offset.back());
    std::vector<std::size_t> fill(p.csr_offset.begin(), p.csr_offset.end() - 1);
    for (std::size_t c = 0; c < p.row.size(); ++c) {
        const WordId r = p.row[c];
        const WordId s = p.col[c];
        p.csr_col[fill[r]] = s;
        p.csr_cell[fill[r]++] = c;
        if (r != s) {
            p.csr_col[fill[s]] = r;
            p.csr_cell[fill[s]++] = c;
        }
    }
    return p;
}

std::pair<Matrix, std::vector<bool>> normalize_rows(const Matrix& embedding) {
    Matrix out = embedding;
    std::vector<bool> valid(static_cast<std::size_t>(embedding.rows()), false);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        double sq = 0.0;
        for (Eigen::Index c = 0; c < out.cols(); ++c) sq += out(r, c) * out(r, c);
        if (sq > 0.0 && std::isfinite(sq)) {
            // Divide rather than multiply by the inverse: collinear rows then normalize to
            // identical vectors and tie exactly.
            const double norm = std::sqrt(sq);
            for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) /= norm;
            valid[static_cast<std::size_t>(r)] = true;
        } else {
            out.row(r).setZero();
        }
    }
    return {std::move(out), std::move(valid)};
}

namespace ref {

UnitCells count_window_pairs(std::span<const std::vector<WordId>> docs, std::size_t dim, int window,
                             std::int64_t scale) {
    constexpr WordId oov = static_cast<WordId>(-1);
    std::unordered_map<std::uint64_t, std::int64_t> cells;
    for (const auto& ids : docs) {
        for (std::size_t p = 0; p < ids.size(); ++p) {
            if (ids[p] == oov) continue;
            const std::size_t end = std::min(ids.size(), p + static_cast<std::size_t>(window) + 1);
            for (std::size_t q = p + 1; q < end; ++q) {
                if (ids[q] == oov) continue;
                const std::uint64_t i = std::min(ids[p], ids[q]);
                const std::uint64_t j = std::max(ids[p], ids[q]);
                cells[i * dim + j] += scale / static_cast<std::int64_t>(q - p);
            }
        }
    }
    UnitCells out(cells.begin(), cells.end());
    std::sort(out.begin(), out.end());
    return out;
}

NeighborTable top_neighbors(const Matrix& embedding, std::size_t k) {
    auto [unit, valid] = normalize_rows(embedding);
    const auto n = static_cast<std::size_t>(unit.rows());
    NeighborTable table;
    table.ids.setConstant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k), -1);
    table.similarity.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));

    std::vector<std::pair<double, std::int32_t>> scored;
    for (std::size_t i = 0; i < n; ++i) {
        if (!valid[i]) continue;
        scored.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !valid[j]) continue;
            double dot = 0.0;
            for (Eigen::Index c = 0; c < unit.cols(); ++c)
                dot += unit(static_cast<Eigen::Index>(i), c) * unit(static_cast<Eigen::Index>(j), c);
            scored.emplace_back(dot, static_cast<std::int32_t>(j));
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (std::size_t c = 0; c < std::min(k, scored.size()); ++c) {
            table.ids(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = scored[c].second;
            table.similarity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = scored[c].first;
        }
    }
    table.valid = std::move(valid);
    return table;
}

SymmetricLoss symmetric_loss(const WeightedPattern& pattern, const Matrix& u) {
    SymmetricLoss out;
    out.gradient.setZero(u.rows(), u.cols());
    for (std::size_t c = 0; c < pattern.row.size(); ++c) {
        const auto r = static_cast<Eigen::Index>(pattern.row[c]);
        const auto s = static_cast<Eigen::Index>(pattern.col[c]);
        double dot = 0.0;
        for (Eigen::Index k = 0; k < u.cols(); ++k) dot += u(r, k) * u(s, k);
        const double diff = dot - pattern.log_y[c];
        const double fdiff = pattern.weight[c] * diff;
        if (r == s) {
            out.value += fdiff * diff;
            for (Eigen::Index k = 0; k < u.cols(); ++k) out.gradient(r, k) += 4.0 * fdiff * u(r, k);
        } else {
            out.value += 2.0 * fdiff * diff;
            for (Eigen::Index k = 0; k < u.cols(); ++k) {
                out.gradient(r, k) += 4.0 * fdiff * u(s, k);
                out.gradient(s, k) += 4.0 * fdiff * u(r, k);
            }
        }
    }
    return out;
}

}  // namespace ref
}  // namespace embal
