#ifndef EMBAL_REPORT_HPP
#define EMBAL_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "embal/neighbors.hpp"

namespace embal {

/// Columns: method, J_s, J_l, J_delta, J_bar, acc@1, acc@5, acc@10 (empty cell for a missing accuracy).
void write_results_csv(const std::filesystem::path& path, const std::vector<BalanceReport>& rows);
std::string results_markdown(const std::vector<BalanceReport>& rows);

std::string rank_table_markdown(const RankTable& table, const std::string& base_label);

struct SweepPoint {
    double x = 0.0;
    std::map<std::size_t, std::pair<double, double>> per_n;  // n -> (J^s_n, J^l_n)
};

/// 0, 0.1, ..., 1.0
std::vector<double> default_sweep_grid();

/// Evaluates x * a + (1 - x) * b at every grid point against the subset baselines.
std::vector<SweepPoint> interpolation_sweep(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                                            const EmbeddingMatrix& small, const EmbeddingMatrix& large,
                                            const std::vector<double>& grid,
                                            std::span<const std::size_t> n_set = kDefaultNeighborhoods);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepPoint>& points);

}  // namespace embal

#endif  // EMBAL_REPORT_HPP
