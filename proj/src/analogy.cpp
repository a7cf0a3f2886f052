#include "embal/analogy.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "embal/corpus.hpp"
#include "embal/kernels.hpp"

namespace embal {

std::vector<AnalogyQuestion> parse_analogy_text(std::istream& in, const std::string& source) {
    std::vector<AnalogyQuestion> out;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    auto lower = [](std::string s) {
        for (auto& ch : s)
            if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
        return s;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.front() == ":" || tokens.front().front() == ':') {
            section = tokens.front() == ":" ? (tokens.size() > 1 ? tokens[1] : "") : tokens.front().substr(1);
            continue;
        }
        if (tokens.size() != 4)
            throw FormatError(source + ":" + std::to_string(lineno) + ": expected 4 words, got " +
                              std::to_string(tokens.size()));
        out.push_back({lower(tokens[0]), lower(tokens[1]), lower(tokens[2]), lower(tokens[3]), section});
    }
    return out;
}

std::vector<AnalogyQuestion> parse_analogy_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path.string());
    return parse_analogy_text(in, path.string());
}

namespace {

std::vector<WordId> top_candidates(const Matrix& unit, const std::vector<bool>& valid, WordId a, WordId b, WordId c,
                                   std::size_t n) {
    const Vector query = (unit.row(b) - unit.row(a) + unit.row(c)).transpose();
    const Vector scores = unit * query;
    std::vector<WordId> order;
    order.reserve(static_cast<std::size_t>(unit.rows()));
    for (Eigen::Index j = 0; j < unit.rows(); ++j) {
        const auto w = static_cast<WordId>(j);
        if (w != a && w != b && w != c && valid[w]) order.push_back(w);
    }
    const auto better = [&](WordId x, WordId y) { return scores[x] != scores[y] ? scores[x] > scores[y] : x < y; };
    const std::size_t take = std::min(n, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
    order.resize(take);
    return order;
}

}  // namespace

std::vector<WordId> solve_analogy(const EmbeddingMatrix& embedding, WordId a, WordId b, WordId c, std::size_t n) {
    const auto v = static_cast<WordId>(embedding.rows());
    if (a >= v || b >= v || c >= v) throw InvalidArgument("analogy query word out of range");
    const auto [unit, valid] = normalize_rows(embedding.values());
    return top_candidates(unit, valid, a, b, c, n);
}

std::vector<std::string> solve_analogy(const EmbeddingMatrix& embedding, const std::string& a, const std::string& b,
                                       const std::string& c, std::size_t n) {
    if (!embedding.vocab()) throw InvalidArgument("solve_analogy by token needs a vocabulary-bound embedding");
    const auto& vocab = *embedding.vocab();
    for (const auto* w : {&a, &b, &c})
        if (!vocab.contains(*w)) throw InvalidArgument("'" + *w + "' is not in the vocabulary");
    std::vector<std::string> out;
    for (const auto id : solve_analogy(embedding, vocab.find(a), vocab.find(b), vocab.find(c), n))
        out.push_back(vocab.token(id));
    return out;
}

std::optional<double> AnalogyScore::accuracy(std::size_t n) const {
    if (evaluated == 0) return std::nullopt;
    const auto it = hits.find(n);
    return static_cast<double>(it == hits.end() ? 0 : it->second) / static_cast<double>(evaluated);
}

AnalogyResult evaluate_analogies(const EmbeddingMatrix& embedding, const std::vector<AnalogyQuestion>& questions,
                                 std::span<const std::size_t> n_values) {
    if (!embedding.vocab()) throw InvalidArgument("analogy evaluation needs a vocabulary-bound embedding");
    if (questions.empty()) throw InvalidArgument("analogy evaluation needs at least one question");
    const auto& vocab = *embedding.vocab();
    const auto [unit, valid] = normalize_rows(embedding.values());
    const std::size_t max_n = n_values.empty() ? 0 : *std::max_element(n_values.begin(), n_values.end());

    // rank[q]: 1-based position of d among the candidates, 0 for a miss beyond max_n,
    // -1 for a skipped question.
    std::vector<long> rank(questions.size(), -1);
    const auto count = static_cast<std::ptrdiff_t>(questions.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t q = 0; q < count; ++q) {
        const auto& question = questions[static_cast<std::size_t>(q)];
        const WordId ids[4] = {vocab.find(question.a), vocab.find(question.b), vocab.find(question.c),
                               vocab.find(question.d)};
        if (std::any_of(std::begin(ids), std::end(ids), [&](WordId w) { return w == Vocabulary::npos || !valid[w]; }))
            continue;
        const auto top = top_candidates(unit, valid, ids[0], ids[1], ids[2], max_n);
        const auto it = std::find(top.begin(), top.end(), ids[3]);
        rank[static_cast<std::size_t>(q)] = it == top.end() ? 0 : static_cast<long>(it - top.begin()) + 1;
    }

    AnalogyResult result;
    auto tally = [&](AnalogyScore& s, long r) {
        ++s.total;
        if (r < 0) {
            ++s.skipped;
            return;
        }
        ++s.evaluated;
        for (const auto n : n_values) {
            auto& h = s.hits[n];
            if (r > 0 && static_cast<std::size_t>(r) <= n) ++h;
        }
    };
    for (std::size_t q = 0; q < questions.size(); ++q) {
        tally(result.overall, rank[q]);
        tally(result.sections[questions[q].section], rank[q]);
    }
    if (result.overall.evaluated == 0)
        std::fprintf(stderr, "warning: no analogy question could be evaluated (all %zu skipped)\n",
                     result.overall.total);
    return result;
}

void write_analogy_csv(const std::filesystem::path& path, const AnalogyResult& result,
                       std::span<const std::size_t> n_values) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << "section,total,evaluated,skipped";
    for (const auto n : n_values) out << ",acc@" << n;
    out << '\n';
    auto row = [&](const std::string& name, const AnalogyScore& s) {
        out << name << ',' << s.total << ',' << s.evaluated << ',' << s.skipped;
        char buf[32];
        for (const auto n : n_values) {
            const auto acc = s.accuracy(n);
            if (acc) {
                std::snprintf(buf, sizeof buf, ",%.6f", *acc);
                out << buf;
            } else {
                out << ',';
            }
        }
        out << '\n';
    };
    for (const auto& [name, s] : result.sections) row(name.empty() ? "(none)" : name, s);
    row("total", result.overall);
}

}  // namespace embal
