#include "embal/cooccur.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "embal/kernels.hpp"

namespace embal {

std::int64_t unit_scale(int window) {
    if (window < 1 || window > kMaxWindow)
        throw InvalidArgument("window must be in [1, " + std::to_string(kMaxWindow) + "], got " +
                              std::to_string(window));
    std::int64_t l = 1;
    for (std::int64_t d = 2; d <= window; ++d) l = std::lcm(l, d);
    return l;
}

CooccurrenceMatrix::CooccurrenceMatrix(std::size_t dim, int window, std::uint64_t vocab_hash)
    : dim_(dim), window_(window), vocab_hash_(vocab_hash) {}

CooccurrenceMatrix CooccurrenceMatrix::from_weights(std::size_t dim, int window, std::uint64_t vocab_hash,
                                                    std::vector<CooccurrenceEntry> entries) {
    for (auto& e : entries) {
        if (e.i >= dim || e.j >= dim) throw ShapeMismatch("co-occurrence index out of range");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) throw InvalidArgument("co-occurrence weights must be finite and >= 0");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    CooccurrenceMatrix m(dim, window, vocab_hash);
    m.exact_ = false;
    for (const auto& e : entries) {
        if (!m.entries_.empty() && m.entries_.back().i == e.i && m.entries_.back().j == e.j)
            m.entries_.back().weight += e.weight;
        else
            m.entries_.push_back(e);
    }
    std::erase_if(m.entries_, [](const auto& e) { return e.weight == 0.0; });
    return m;
}

void CooccurrenceMatrix::set_units(std::vector<std::pair<std::uint64_t, std::int64_t>> cells) {
    const auto scale = static_cast<double>(unit_scale(window_));
    entries_.clear();
    units_.clear();
    entries_.reserve(cells.size());
    units_.reserve(cells.size());
    for (const auto& [key, units] : cells) {
        if (units == 0) continue;
        entries_.push_back({static_cast<WordId>(key / dim_), static_cast<WordId>(key % dim_),
                            static_cast<double>(units) / scale});
        units_.push_back(units);
    }
    exact_ = true;
}

double CooccurrenceMatrix::weight(WordId i, WordId j) const {
    if (i > j) std::swap(i, j);
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{i, j},
                                     [](const CooccurrenceEntry& e, const std::pair<WordId, WordId>& key) {
                                         return std::tie(e.i, e.j) < std::tie(key.first, key.second);
                                     });
    return (it != entries_.end() && it->i == i && it->j == j) ? it->weight : 0.0;
}

void CooccurrenceMatrix::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << dim_ << ' ' << window_ << '\n';
    out << std::setprecision(17);
    for (const auto& e : entries_) out << e.i << ' ' << e.j << ' ' << e.weight << '\n';
}

CooccurrenceMatrix CooccurrenceMatrix::load(const std::filesystem::path& path, std::uint64_t vocab_hash) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path.string());
    std::size_t dim = 0;
    int window = 0;
    std::string header;
    if (!std::getline(in, header) || !(std::istringstream(header) >> dim >> window))
        throw FormatError(path.string() + ": expected header 'V window'");

    std::vector<CooccurrenceEntry> entries;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        CooccurrenceEntry e;
        if (!(fields >> e.i >> e.j >> e.weight) || e.i > e.j || e.j >= dim || !(e.weight > 0.0))
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": malformed entry");
        entries.push_back(e);
    }

    // Recover exact integer weights when every value round-trips.
    if (window >= 1 && window <= kMaxWindow) {
        const std::int64_t scale = unit_scale(window);
        std::vector<std::pair<std::uint64_t, std::int64_t>> cells;
        cells.reserve(entries.size());
        bool exact = true;
        for (const auto& e : entries) {
            const auto units = std::llround(e.weight * static_cast<double>(scale));
            if (static_cast<double>(units) / static_cast<double>(scale) != e.weight) {
                exact = false;
                break;
            }
            cells.emplace_back(static_cast<std::uint64_t>(e.i) * dim + e.j, units);
        }
        if (exact) {
            std::sort(cells.begin(), cells.end());
            CooccurrenceMatrix m(dim, window, vocab_hash);
            m.set_units(std::move(cells));
            return m;
        }
    }
    return from_weights(dim, window, vocab_hash, std::move(entries));
}

CooccurrenceMatrix count_cooccurrences(const DocumentSet& docs, const Vocabulary& vocab, int window) {
    const std::int64_t scale = unit_scale(window);
    std::vector<std::vector<WordId>> encoded;
    encoded.reserve(docs.size());
    for (const auto& doc : docs.documents()) encoded.push_back(encode(vocab, doc.text));

    CooccurrenceMatrix m(vocab.size(), window, vocab.hash());
    m.set_units(kernels::count_window_pairs(encoded, vocab.size(), window, scale));
    return m;
}

CooccurrenceMatrix merge_shards(std::span<const CooccurrenceMatrix> parts) {
    if (parts.empty()) throw InvalidArgument("merge_shards needs at least one matrix");
    const auto& first = parts.front();
    for (const auto& p : parts) {
        if (p.dim() != first.dim() || p.window() != first.window() || p.vocab_hash() != first.vocab_hash())
            throw ShapeMismatch("cannot merge co-occurrence matrices with different dimension, window or vocabulary");
    }

    const bool exact = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.exact(); });
    if (exact) {
        std::vector<std::pair<std::uint64_t, std::int64_t>> cells;
        for (const auto& p : parts)
            for (std::size_t k = 0; k < p.nnz(); ++k)
                cells.emplace_back(static_cast<std::uint64_t>(p.entries()[k].i) * p.dim() + p.entries()[k].j,
                                   p.units()[k]);
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::uint64_t, std::int64_t>> summed;
        for (const auto& c : cells) {
            if (!summed.empty() && summed.back().first == c.first)
                summed.back().second += c.second;
            else
                summed.push_back(c);
        }
        CooccurrenceMatrix m(first.dim(), first.window(), first.vocab_hash());
        m.set_units(std::move(summed));
        return m;
    }

    std::vector<CooccurrenceEntry> all;
    for (const auto& p : parts) all.insert(all.end(), p.entries().begin(), p.entries().end());
    return CooccurrenceMatrix::from_weights(first.dim(), first.window(), first.vocab_hash(), std::move(all));
}

}  // namespace embal
