#ifndef EMBAL_SYNTH_HPP
#define EMBAL_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "embal/corpus.hpp"

namespace embal {

/// Parameters of the synthetic two-subset corpus.
///
/// Every content word has a latent position on the unit sphere. Each subset
/// sees its own version of those positions: the shared base position pulled
/// towards an independent random direction by `subset_shift`. A document
/// picks a random center and draws content words with probability
/// proportional to zipf(rank) * exp(concentration * (cos(position, center) - 1)),
/// interleaved with uniformly drawn function words.
struct SynthConfig {
    std::size_t content_words = 800;
    std::size_t function_words = 20;
    std::size_t latent_dim = 3;
    double subset_shift = 0.35;
    double concentration = 20.0;
    std::size_t small_docs = 1500;
    std::size_t large_docs = 3000;
    std::size_t doc_length = 100;
    double function_share = 0.2;
    double zipf_exponent = 0.5;
    std::string small_label = "small";
    std::string large_label = "large";
    std::uint64_t seed = 7;
};

/// Deterministic in `seed`; small-subset documents first, then large.
DocumentSet synth_corpus(const SynthConfig& cfg);

/// Writes "<small_label>.txt" and "<large_label>.txt" (one document per line) and returns their paths.
std::vector<std::filesystem::path> write_synth_corpus(const SynthConfig& cfg, const std::filesystem::path& dir);

/// Pronounceable token for a word index, unique per index.
std::string synth_word(std::size_t index);

}  // namespace embal

#endif  // EMBAL_SYNTH_HPP
