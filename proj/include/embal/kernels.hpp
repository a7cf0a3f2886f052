#ifndef EMBAL_KERNELS_HPP
#define EMBAL_KERNELS_HPP

// Hot loops of the pipeline. Each kernel exists twice: an OpenMP version in
// `kernels` and a plain serial version in `ref`. The modules call the OpenMP
// versions; the serial ones are the readable reference the tests and the
// benchmark compare against.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "embal/common.hpp"

namespace embal {

/// (i * dim + j, units) for i <= j, sorted by key.
using UnitCells = std::vector<std::pair<std::uint64_t, std::int64_t>>;

/// Top-k cosine neighbors of every row: ids(r, c) is the c-th neighbor of row r.
/// Rows that are invalid (zero norm) have all ids set to -1 and are never candidates.
struct NeighborTable {
    Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ids;
    Matrix similarity;
    std::vector<bool> valid;
};

/// Symmetric pattern of a co-occurrence matrix with f(Y) and log Y precomputed,
/// stored once per upper-triangle cell.
struct WeightedPattern {
    std::size_t dim = 0;
    std::vector<WordId> row;
    std::vector<WordId> col;
    std::vector<double> weight;  // f(Y_ij)
    std::vector<double> log_y;   // log Y_ij
    // CSR over both orientations, used by the row-parallel kernel.
    std::vector<std::size_t> csr_offset;
    std::vector<WordId> csr_col;
    std::vector<std::size_t> csr_cell;
};

WeightedPattern make_pattern(std::size_t dim, std::span<const WordId> row, std::span<const WordId> col,
                             std::span<const double> weight, std::span<const double> log_y);

/// Result of the bias-free symmetric GloVe term sum_ij f_ij (u_i.u_j - log Y_ij)^2.
struct SymmetricLoss {
    double value = 0.0;
    Matrix gradient;  // d value / d U, i.e. 4 M U
};

namespace kernels {

UnitCells count_window_pairs(std::span<const std::vector<WordId>> docs, std::size_t dim, int window,
                             std::int64_t scale);
NeighborTable top_neighbors(const Matrix& embedding, std::size_t k);
SymmetricLoss symmetric_loss(const WeightedPattern& pattern, const Matrix& u);

}  // namespace kernels

namespace ref {

UnitCells count_window_pairs(std::span<const std::vector<WordId>> docs, std::size_t dim, int window,
                             std::int64_t scale);
NeighborTable top_neighbors(const Matrix& embedding, std::size_t k);
SymmetricLoss symmetric_loss(const WeightedPattern& pattern, const Matrix& u);

}  // namespace ref

/// Rows scaled to unit length; zero rows stay zero and are flagged invalid.
std::pair<Matrix, std::vector<bool>> normalize_rows(const Matrix& embedding);

/// Thread count used by OpenMP kernels (omp_set_num_threads wrapper).
void set_threads(int threads);
int threads();

}  // namespace embal

#endif  // EMBAL_KERNELS_HPP
