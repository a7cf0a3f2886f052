#ifndef EMBAL_NEIGHBORS_HPP
#define EMBAL_NEIGHBORS_HPP

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embal/embedding.hpp"
#include "embal/kernels.hpp"

namespace embal {

inline constexpr std::array<std::size_t, 4> kDefaultNeighborhoods{5, 10, 25, 50};

/// The n nearest words of `word` by cosine similarity, best first; ties go to the lower index.
struct NeighborSet {
    WordId word = 0;
    std::vector<WordId> members;

    [[nodiscard]] std::size_t n() const { return members.size(); }
};

/// Exhaustive search. Zero rows are never candidates; a zero query row is an error.
NeighborSet nearest(const EmbeddingMatrix& embedding, WordId word, std::size_t n);

/// |A intersect B| / n.
double j_word(const NeighborSet& a, const NeighborSet& b);

/// Precomputed top-k neighbor lists of one embedding. Any n <= k is a prefix of these lists.
class NeighborIndex {
public:
    NeighborIndex(const EmbeddingMatrix& embedding, std::size_t k);

    [[nodiscard]] std::size_t k() const { return static_cast<std::size_t>(table_.ids.cols()); }
    [[nodiscard]] std::size_t size() const { return table_.valid.size(); }
    [[nodiscard]] bool valid(WordId w) const { return table_.valid[w]; }
    [[nodiscard]] std::uint64_t vocab_hash() const { return vocab_hash_; }
    /// Neighbors of `w` truncated to n.
    [[nodiscard]] NeighborSet neighbors(WordId w, std::size_t n) const;
    [[nodiscard]] const NeighborTable& table() const { return table_; }

private:
    NeighborTable table_;
    std::uint64_t vocab_hash_ = 0;
    std::size_t valid_count_ = 0;
};

/// Mean of j_word over words whose rows are non-zero in both embeddings.
struct Overlap {
    double value = 0.0;
    std::size_t words = 0;     // words entering the mean
    std::size_t excluded = 0;  // words skipped for a zero row
};

Overlap j_corpus(const NeighborIndex& a, const NeighborIndex& b, std::size_t n);
double j_corpus(const EmbeddingMatrix& a, const EmbeddingMatrix& b, std::size_t n);

/// Influence of the small and large subset on U (one row of the results table).
struct BalanceReport {
    std::string method;
    std::map<std::size_t, std::pair<double, double>> per_n;  // n -> (J^s_n, J^l_n)
    double j_s = 0.0;
    double j_l = 0.0;
    double j_bar = 0.0;
    double j_delta = 0.0;
    std::size_t excluded_words = 0;
    /// Analogy accuracy at top-n; absent when no questions could be evaluated.
    std::map<std::size_t, std::optional<double>> analogy;
};

BalanceReport balance_report(const NeighborIndex& u, const NeighborIndex& small, const NeighborIndex& large,
                             std::span<const std::size_t> n_set = kDefaultNeighborhoods);
BalanceReport balance_report(const EmbeddingMatrix& u, const EmbeddingMatrix& small, const EmbeddingMatrix& large,
                             std::span<const std::size_t> n_set = kDefaultNeighborhoods);

/// Where the base embedding's neighbors of one word land in other embeddings.
struct RankTable {
    std::string word;
    std::vector<std::string> labels;             // one per other embedding
    std::vector<std::string> neighbors;          // base neighbors, best first
    std::vector<std::vector<std::optional<std::size_t>>> ranks;  // [neighbor][other], 1-based
};

/// Ranks beyond `cutoff` (or rows that are zero in the other embedding) are reported absent.
RankTable neighbor_rank_table(const std::string& word, const EmbeddingMatrix& base,
                              const std::vector<std::pair<std::string, const EmbeddingMatrix*>>& others,
                              std::size_t n, std::size_t cutoff = 25);

/// All candidates of `word` ordered by descending cosine (ties by index); zero rows excluded.
std::vector<WordId> cosine_ranking(const EmbeddingMatrix& embedding, WordId word);

}  // namespace embal

#endif  // EMBAL_NEIGHBORS_HPP
