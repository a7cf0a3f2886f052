#include <omp.h>

#include <algorithm>
#include <unordered_map>

#include "embal/kernels.hpp"

namespace embal {

void set_threads(int threads) { omp_set_num_threads(std::max(1, threads)); }

int threads() { return omp_get_max_threads(); }

namespace kernels {

UnitCells count_window_pairs(std::span<const std::vector<WordId>> docs, std::size_t dim, int window,
                             std::int64_t scale) {
    constexpr WordId oov = static_cast<WordId>(-1);
    const auto n_docs = static_cast<std::ptrdiff_t>(docs.size());
    std::vector<std::unordered_map<std::uint64_t, std::int64_t>> shards(static_cast<std::size_t>(threads()));

#pragma omp parallel
    {
        auto& cells = shards[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
        for (std::ptrdiff_t d = 0; d < n_docs; ++d) {
            const auto& ids = docs[static_cast<std::size_t>(d)];
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
    }

    // Integer sums: the merge order cannot change the result.
    auto& merged = shards.front();
    for (std::size_t t = 1; t < shards.size(); ++t) {
        for (const auto& [key, units] : shards[t]) merged[key] += units;
        shards[t].clear();
    }
    UnitCells out(merged.begin(), merged.end());
    std::sort(out.begin(), out.end());
    return out;
}

NeighborTable top_neighbors(const Matrix& embedding, std::size_t k) {
    auto [unit, valid] = normalize_rows(embedding);
    const auto n = unit.rows();
    NeighborTable table;
    table.ids.setConstant(n, static_cast<Eigen::Index>(k), -1);
    table.similarity.setZero(n, static_cast<Eigen::Index>(k));

#pragma omp parallel
    {
        Vector sims(n);
        std::vector<std::int32_t> order;
        order.reserve(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 16)
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!valid[static_cast<std::size_t>(i)]) continue;
            sims.noalias() = unit * unit.row(i).transpose();
            order.clear();
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i && valid[static_cast<std::size_t>(j)]) order.push_back(static_cast<std::int32_t>(j));
            const auto better = [&](std::int32_t a, std::int32_t b) {
                return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
            };
            const auto take = std::min(k, order.size());
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
            for (std::size_t c = 0; c < take; ++c) {
                table.ids(i, static_cast<Eigen::Index>(c)) = order[c];
                table.similarity(i, static_cast<Eigen::Index>(c)) = sims[order[c]];
            }
        }
    }
    table.valid = std::move(valid);
    return table;
}

SymmetricLoss symmetric_loss(const WeightedPattern& pattern, const Matrix& u) {
    SymmetricLoss out;
    out.gradient.setZero(u.rows(), u.cols());
    const auto n = static_cast<std::ptrdiff_t>(pattern.dim);
    double total = 0.0;

#pragma omp parallel for schedule(dynamic, 32) reduction(+ : total)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        auto grad = out.gradient.row(r);
        const auto ur = u.row(r);
        for (std::size_t e = pattern.csr_offset[static_cast<std::size_t>(r)];
             e < pattern.csr_offset[static_cast<std::size_t>(r) + 1]; ++e) {
            const auto s = static_cast<Eigen::Index>(pattern.csr_col[e]);
            const std::size_t cell = pattern.csr_cell[e];
            const double diff = ur.dot(u.row(s)) - pattern.log_y[cell];
            const double fdiff = pattern.weight[cell] * diff;
            total += fdiff * diff;
            grad.noalias() += (4.0 * fdiff) * u.row(s);
        }
    }
    out.value = total;
    return out;
}

}  // namespace kernels
}  // namespace embal
