#include "embal/neighbors.hpp"

#include <algorithm>
#include <numeric>

namespace embal {

std::vector<WordId> cosine_ranking(const EmbeddingMatrix& embedding, WordId word) {
    if (word >= embedding.rows()) throw InvalidArgument("word index " + std::to_string(word) + " out of range");
    const auto [unit, valid] = normalize_rows(embedding.values());
    if (!valid[word]) throw InvalidArgument("word index " + std::to_string(word) + " has a zero-norm row");
    const Vector sims = unit * unit.row(word).transpose();
    std::vector<WordId> order;
    for (Eigen::Index j = 0; j < unit.rows(); ++j)
        if (j != word && valid[static_cast<std::size_t>(j)]) order.push_back(static_cast<WordId>(j));
    std::sort(order.begin(), order.end(), [&](WordId a, WordId b) {
        return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
    });
    return order;
}

NeighborSet nearest(const EmbeddingMatrix& embedding, WordId word, std::size_t n) {
    if (n < 1 || n + 1 > static_cast<std::size_t>(embedding.rows()))
        throw InvalidArgument("neighborhood size must be in [1, V-1]");
    auto order = cosine_ranking(embedding, word);
    if (order.size() < n) throw InvalidArgument("fewer than n non-zero candidate rows");
    order.resize(n);
    return {word, std::move(order)};
}

double j_word(const NeighborSet& a, const NeighborSet& b) {
    if (a.n() != b.n()) throw InvalidArgument("j_word: neighborhood sizes differ");
    if (a.n() == 0) throw InvalidArgument("j_word: empty neighborhoods");
    std::vector<WordId> x = a.members;
    std::vector<WordId> y = b.members;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<WordId> common;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    return static_cast<double>(common.size()) / static_cast<double>(a.n());
}

NeighborIndex::NeighborIndex(const EmbeddingMatrix& embedding, std::size_t k)
    : table_(kernels::top_neighbors(embedding.values(), k)), vocab_hash_(embedding.vocab_hash()) {
    valid_count_ = static_cast<std::size_t>(std::count(table_.valid.begin(), table_.valid.end(), true));
    if (valid_count_ > 0 && valid_count_ - 1 < k)
        throw InvalidArgument("neighborhood size " + std::to_string(k) + " exceeds the " +
                              std::to_string(valid_count_ - 1) + " available candidates");
}

NeighborSet NeighborIndex::neighbors(WordId w, std::size_t n) const {
    if (n > k()) throw InvalidArgument("neighbor index holds only " + std::to_string(k()) + " neighbors");
    if (!valid(w)) throw InvalidArgument("word index " + std::to_string(w) + " has a zero-norm row");
    NeighborSet s{w, {}};
    s.members.reserve(n);
    for (std::size_t c = 0; c < n; ++c)
        s.members.push_back(static_cast<WordId>(table_.ids(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(c))));
    return s;
}

Overlap j_corpus(const NeighborIndex& a, const NeighborIndex& b, std::size_t n) {
    if (a.size() != b.size()) throw ShapeMismatch("j_corpus: vocabulary sizes differ");
    if (a.vocab_hash() != 0 && b.vocab_hash() != 0 && a.vocab_hash() != b.vocab_hash())
        throw ShapeMismatch("j_corpus: embeddings are bound to different vocabularies");
    if (a.size() == 0) throw InvalidArgument("j_corpus: empty vocabulary");
    if (n < 1 || n > a.k() || n > b.k()) throw InvalidArgument("j_corpus: neighborhood size exceeds the index");

    // Shared-neighbor counts are integers, so the sum is exact and order-independent.
    std::uint64_t shared = 0;
    std::size_t words = 0;
    const auto size = static_cast<std::ptrdiff_t>(a.size());
    std::vector<std::int32_t> x(n), y(n);
#pragma omp parallel for reduction(+ : shared, words) firstprivate(x, y) schedule(static)
    for (std::ptrdiff_t w = 0; w < size; ++w) {
        const auto word = static_cast<WordId>(w);
        if (!a.valid(word) || !b.valid(word)) continue;
        for (std::size_t c = 0; c < n; ++c) {
            x[c] = a.table().ids(w, static_cast<Eigen::Index>(c));
            y[c] = b.table().ids(w, static_cast<Eigen::Index>(c));
        }
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        std::size_t i = 0, j = 0;
        while (i < n && j < n) {
            if (x[i] < y[j]) ++i;
            else if (y[j] < x[i]) ++j;
            else { ++shared; ++i; ++j; }
        }
        ++words;
    }
    Overlap out;
    out.words = words;
    out.excluded = a.size() - words;
    if (words == 0) throw InvalidArgument("j_corpus: no word has a non-zero row in both embeddings");
    out.value = static_cast<double>(shared) / (static_cast<double>(n) * static_cast<double>(words));
    return out;
}

double j_corpus(const EmbeddingMatrix& a, const EmbeddingMatrix& b, std::size_t n) {
    require_aligned(a, b, "j_corpus");
    return j_corpus(NeighborIndex(a, n), NeighborIndex(b, n), n).value;
}

BalanceReport balance_report(const NeighborIndex& u, const NeighborIndex& small, const NeighborIndex& large,
                             std::span<const std::size_t> n_set) {
    if (n_set.empty()) throw InvalidArgument("balance_report: empty neighborhood set");
    BalanceReport r;
    double sum_s = 0.0, sum_l = 0.0;
    for (const auto n : n_set) {
        const auto s = j_corpus(small, u, n);
        const auto l = j_corpus(large, u, n);
        r.per_n[n] = {s.value, l.value};
        sum_s += s.value;
        sum_l += l.value;
        r.excluded_words = std::max({r.excluded_words, s.excluded, l.excluded});
    }
    const auto count = static_cast<double>(n_set.size());
    r.j_s = sum_s / count;
    r.j_l = sum_l / count;
    r.j_bar = 0.5 * (r.j_s + r.j_l);
    r.j_delta = r.j_s - r.j_l;
    return r;
}

BalanceReport balance_report(const EmbeddingMatrix& u, const EmbeddingMatrix& small, const EmbeddingMatrix& large,
                             std::span<const std::size_t> n_set) {
    require_aligned(u, small, "balance_report");
    require_aligned(u, large, "balance_report");
    const std::size_t k = *std::max_element(n_set.begin(), n_set.end());
    BalanceReport r = balance_report(NeighborIndex(u, k), NeighborIndex(small, k), NeighborIndex(large, k), n_set);
    r.method = u.method();
    return r;
}

RankTable neighbor_rank_table(const std::string& word, const EmbeddingMatrix& base,
                              const std::vector<std::pair<std::string, const EmbeddingMatrix*>>& others,
                              std::size_t n, std::size_t cutoff) {
    if (!base.vocab()) throw InvalidArgument("neighbor_rank_table needs a vocabulary-bound embedding");
    const WordId id = base.vocab()->find(word);
    if (id == Vocabulary::npos) throw InvalidArgument("'" + word + "' is not in the vocabulary");

    RankTable table;
    table.word = word;
    const NeighborSet top = nearest(base, id, n);
    for (const auto m : top.members) table.neighbors.push_back(base.vocab()->token(m));
    table.ranks.assign(n, std::vector<std::optional<std::size_t>>(others.size()));

    for (std::size_t o = 0; o < others.size(); ++o) {
        const auto& [label, other] = others[o];
        require_aligned(base, *other, "neighbor_rank_table");
        table.labels.push_back(label);
        const std::vector<WordId> ranking = cosine_ranking(*other, id);
        std::vector<std::size_t> position(static_cast<std::size_t>(other->rows()), 0);
        for (std::size_t r = 0; r < ranking.size(); ++r) position[ranking[r]] = r + 1;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t rank = position[top.members[k]];
            if (rank != 0 && rank <= cutoff) table.ranks[k][o] = rank;
        }
    }
    return table;
}

}  // namespace embal
