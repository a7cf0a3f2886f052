#ifndef EMBAL_COOCCUR_HPP
#define EMBAL_COOCCUR_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "embal/common.hpp"
#include "embal/corpus.hpp"

namespace embal {

/// One stored cell of the upper triangle, i <= j.
struct CooccurrenceEntry {
    WordId i = 0;
    WordId j = 0;
    double weight = 0.0;

    friend bool operator==(const CooccurrenceEntry&, const CooccurrenceEntry&) = default;
};

/// Largest supported context window; see unit_scale().
inline constexpr int kMaxWindow = 24;

/// lcm(1..window). Counted weights are stored as exact integer multiples of 1/unit_scale.
std::int64_t unit_scale(int window);

/// Sparse symmetric V x V matrix of distance-weighted co-occurrence counts.
///
/// Only the upper triangle (i <= j) is stored, sorted by (i, j); every stored
/// weight is strictly positive. Matrices produced by counting additionally carry
/// exact integer weights (`units()`), which makes shard merges and upsampling
/// reproducible bit for bit. Matrices built from arbitrary real weights are
/// "inexact" and merge by floating-point addition.
class CooccurrenceMatrix {
public:
    CooccurrenceMatrix() = default;
    CooccurrenceMatrix(std::size_t dim, int window, std::uint64_t vocab_hash);

    /// Canonicalizes (swaps to i <= j, sums duplicates, drops zeros). Negative weights are rejected.
    static CooccurrenceMatrix from_weights(std::size_t dim, int window, std::uint64_t vocab_hash,
                                           std::vector<CooccurrenceEntry> entries);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] int window() const { return window_; }
    [[nodiscard]] std::uint64_t vocab_hash() const { return vocab_hash_; }
    [[nodiscard]] const std::vector<CooccurrenceEntry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] bool exact() const { return exact_; }
    /// Exact weights in units of 1/unit_scale(window); parallel to entries(). Empty when !exact().
    [[nodiscard]] const std::vector<std::int64_t>& units() const { return units_; }
    /// Symmetric lookup; 0 for unstored cells.
    [[nodiscard]] double weight(WordId i, WordId j) const;

    void save(const std::filesystem::path& path) const;
    static CooccurrenceMatrix load(const std::filesystem::path& path, std::uint64_t vocab_hash = 0);

    friend bool operator==(const CooccurrenceMatrix&, const CooccurrenceMatrix&) = default;

private:
    friend CooccurrenceMatrix count_cooccurrences(const DocumentSet&, const Vocabulary&, int);
    friend CooccurrenceMatrix merge_shards(std::span<const CooccurrenceMatrix>);
    void set_units(std::vector<std::pair<std::uint64_t, std::int64_t>> cells);

    std::size_t dim_ = 0;
    int window_ = 0;
    std::uint64_t vocab_hash_ = 0;
    std::vector<CooccurrenceEntry> entries_;
    std::vector<std::int64_t> units_;
    bool exact_ = true;
};

/// Every pair of in-vocabulary tokens at distance d <= window inside one document adds 1/d
/// to its symmetric cell. OOV tokens are skipped but keep their positions; windows never
/// cross document boundaries.
CooccurrenceMatrix count_cooccurrences(const DocumentSet& docs, const Vocabulary& vocab, int window);

/// Cell-wise sum. All parts must share dim, window and vocabulary binding.
CooccurrenceMatrix merge_shards(std::span<const CooccurrenceMatrix> parts);

}  // namespace embal

#endif  // EMBAL_COOCCUR_HPP
