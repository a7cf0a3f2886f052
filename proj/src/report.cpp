#include "embal/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "embal/merge.hpp"

namespace embal {

namespace {

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    return out;
}

}  // namespace

void write_results_csv(const std::filesystem::path& path, const std::vector<BalanceReport>& rows) {
    auto out = open_out(path);
    out << "method,J_s,J_l,J_delta,J_bar,acc@1,acc@5,acc@10\n";
    for (const auto& r : rows) {
        out << r.method << ',' << fmt("%.6f", r.j_s) << ',' << fmt("%.6f", r.j_l) << ',' << fmt("%.6f", r.j_delta)
            << ',' << fmt("%.6f", r.j_bar);
        for (const std::size_t n : {1, 5, 10}) {
            out << ',';
            const auto it = r.analogy.find(n);
            if (it != r.analogy.end() && it->second) out << fmt("%.6f", *it->second);
        }
        out << '\n';
    }
}

std::string results_markdown(const std::vector<BalanceReport>& rows) {
    std::ostringstream out;
    out << "| method | J^s | J^l | J^Δ | J̄ | n=1 (%) | n=5 (%) | n=10 (%) |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.method << " | " << fmt("%.2f", r.j_s) << " | " << fmt("%.2f", r.j_l) << " | "
            << fmt("%.2f", r.j_delta) << " | " << fmt("%.2f", r.j_bar) << " |";
        for (const std::size_t n : {1, 5, 10}) {
            const auto it = r.analogy.find(n);
            out << ' ' << ((it != r.analogy.end() && it->second) ? fmt("%.2f", 100.0 * *it->second) : "-") << " |";
        }
        out << '\n';
    }
    return out.str();
}

std::string rank_table_markdown(const RankTable& table, const std::string& base_label) {
    std::ostringstream out;
    out << "| " << base_label << ": " << table.word << " |";
    for (const auto& label : table.labels) out << ' ' << label << " |";
    out << "\n|---|";
    for (std::size_t k = 0; k < table.labels.size(); ++k) out << "---|";
    out << '\n';
    for (std::size_t k = 0; k < table.neighbors.size(); ++k) {
        out << "| " << table.neighbors[k] << " |";
        for (const auto& rank : table.ranks[k]) out << ' ' << (rank ? std::to_string(*rank) : "-") << " |";
        out << '\n';
    }
    return out.str();
}

std::vector<double> default_sweep_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
    return grid;
}

std::vector<SweepPoint> interpolation_sweep(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                                            const EmbeddingMatrix& small, const EmbeddingMatrix& large,
                                            const std::vector<double>& grid, std::span<const std::size_t> n_set) {
    require_aligned(a, b, "sweep");
    require_aligned(a, small, "sweep");
    require_aligned(a, large, "sweep");
    const std::size_t k = *std::max_element(n_set.begin(), n_set.end());
    const NeighborIndex small_index(small, k);
    const NeighborIndex large_index(large, k);
    std::vector<SweepPoint> points;
    for (const double x : grid) {
        const NeighborIndex mixed(interpolate(a, b, x), k);
        SweepPoint p{x, {}};
        for (const auto n : n_set)
            p.per_n[n] = {j_corpus(small_index, mixed, n).value, j_corpus(large_index, mixed, n).value};
        points.push_back(std::move(p));
    }
    return points;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepPoint>& points) {
    auto out = open_out(path);
    out << "x,n,J_s,J_l\n";
    for (const auto& p : points)
        for (const auto& [n, j] : p.per_n)
            out << fmt("%.4f", p.x) << ',' << n << ',' << fmt("%.6f", j.first) << ',' << fmt("%.6f", j.second) << '\n';
}

}  // namespace embal
