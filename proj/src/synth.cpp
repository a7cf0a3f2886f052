#include "embal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "embal/rng.hpp"

namespace embal {

std::string synth_word(std::size_t index) {
    static constexpr const char* consonants = "bdfgklmnprstvz";
    static constexpr const char* vowels = "aeiou";
    // Base-70 digits as consonant-vowel syllables, at least two of them.
    std::string w;
    std::size_t x = index;
    do {
        w += consonants[x % 14];
        x /= 14;
        w += vowels[x % 5];
        x /= 5;
    } while (x > 0 || w.size() < 4);
    return w;
}

namespace {

using Point = std::vector<double>;

Point random_direction(std::size_t dim, Rng& rng) {
    // Box-Muller on our own uniform draws keeps the stream toolchain-independent.
    Point p(dim);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : p) {
            const double u1 = 1.0 - uniform_unit(rng);
            const double u2 = uniform_unit(rng);
            x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            norm += x * x;
        }
    } while (norm == 0.0);
    for (auto& x : p) x /= std::sqrt(norm);
    return p;
}

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// Base position pulled towards an independent direction by `shift` and renormalized.
std::vector<Point> perturb(const std::vector<Point>& base, double shift, Rng& rng) {
    std::vector<Point> out;
    out.reserve(base.size());
    for (const auto& b : base) {
        const Point r = random_direction(b.size(), rng);
        Point p(b.size());
        double norm = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            p[k] = (1.0 - shift) * b[k] + shift * r[k];
            norm += p[k] * p[k];
        }
        for (auto& x : p) x /= std::sqrt(norm);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

DocumentSet synth_corpus(const SynthConfig& cfg) {
    if (cfg.content_words < 2 || cfg.function_words == 0 || cfg.latent_dim < 2)
        throw InvalidArgument("synthetic corpus needs >= 2 content words, function words and latent_dim >= 2");
    if (cfg.small_label == cfg.large_label) throw InvalidArgument("subset labels must differ");

    Rng rng(cfg.seed);
    std::vector<Point> base;
    for (std::size_t w = 0; w < cfg.content_words; ++w) base.push_back(random_direction(cfg.latent_dim, rng));
    const auto small_pos = perturb(base, cfg.subset_shift, rng);
    const auto large_pos = perturb(base, cfg.subset_shift, rng);

    std::vector<double> frequency(cfg.content_words);
    for (std::size_t w = 0; w < cfg.content_words; ++w)
        frequency[w] = 1.0 / std::pow(static_cast<double>(w + 1), cfg.zipf_exponent);

    std::vector<std::string> words;
    for (std::size_t k = 0; k < cfg.function_words + cfg.content_words; ++k) words.push_back(synth_word(k));

    DocumentSet docs;
    std::vector<double> cdf(cfg.content_words);
    auto emit = [&](const std::string& label, std::size_t count, const std::vector<Point>& pos) {
        for (std::size_t d = 0; d < count; ++d) {
            const Point center = random_direction(cfg.latent_dim, rng);
            double acc = 0.0;
            for (std::size_t w = 0; w < cfg.content_words; ++w) {
                acc += frequency[w] * std::exp(cfg.concentration * (dot(pos[w], center) - 1.0));
                cdf[w] = acc;
            }
            std::string text;
            for (std::size_t p = 0; p < cfg.doc_length; ++p) {
                const std::string* w;
                if (uniform_unit(rng) < cfg.function_share) {
                    w = &words[uniform_index(rng, cfg.function_words)];
                } else {
                    const double u = uniform_unit(rng) * acc;
                    const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                    w = &words[cfg.function_words + std::min(k, cfg.content_words - 1)];
                }
                if (!text.empty()) text += ' ';
                text += *w;
            }
            docs.add({label + ":" + std::to_string(d + 1), label, std::move(text)});
        }
    };
    emit(cfg.small_label, cfg.small_docs, small_pos);
    emit(cfg.large_label, cfg.large_docs, large_pos);
    return docs;
}

std::vector<std::filesystem::path> write_synth_corpus(const SynthConfig& cfg, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const DocumentSet docs = synth_corpus(cfg);
    std::vector<std::filesystem::path> paths;
    for (const auto& label : {cfg.small_label, cfg.large_label}) {
        const auto path = dir / (label + ".txt");
        std::ofstream out(path);
        if (!out) throw FormatError("cannot write " + path.string());
        for (const auto& doc : docs.documents())
            if (doc.label == label) out << doc.text << '\n';
        paths.push_back(path);
    }
    return paths;
}

}  // namespace embal
