#ifndef EMBAL_ANALOGY_HPP
#define EMBAL_ANALOGY_HPP

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embal/embedding.hpp"

namespace embal {

inline constexpr std::array<std::size_t, 3> kAnalogyTopN{1, 5, 10};

/// a : b :: c : d
struct AnalogyQuestion {
    std::string a, b, c, d;
    std::string section;
};

/// Google analogy format: ": section" header lines, then four tokens per line.
std::vector<AnalogyQuestion> parse_analogy_file(const std::filesystem::path& path);
std::vector<AnalogyQuestion> parse_analogy_text(std::istream& in, const std::string& source = "<input>");

/// 3CosAdd on unit-normalized vectors: candidates ranked by cosine to b - a + c,
/// the query words excluded. Returns the top n word ids.
std::vector<WordId> solve_analogy(const EmbeddingMatrix& embedding, WordId a, WordId b, WordId c, std::size_t n);
std::vector<std::string> solve_analogy(const EmbeddingMatrix& embedding, const std::string& a, const std::string& b,
                                       const std::string& c, std::size_t n);

struct AnalogyScore {
    std::size_t total = 0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    std::map<std::size_t, std::size_t> hits;

    /// hits / evaluated, or nothing when no question was evaluated.
    [[nodiscard]] std::optional<double> accuracy(std::size_t n) const;
};

struct AnalogyResult {
    AnalogyScore overall;
    std::map<std::string, AnalogyScore> sections;
};

/// Questions with any out-of-vocabulary (or zero-row) word are skipped and left out of the denominator.
AnalogyResult evaluate_analogies(const EmbeddingMatrix& embedding, const std::vector<AnalogyQuestion>& questions,
                                 std::span<const std::size_t> n_values = kAnalogyTopN);

/// Per-section and total accuracies.
void write_analogy_csv(const std::filesystem::path& path, const AnalogyResult& result,
                       std::span<const std::size_t> n_values = kAnalogyTopN);

}  // namespace embal

#endif  // EMBAL_ANALOGY_HPP
