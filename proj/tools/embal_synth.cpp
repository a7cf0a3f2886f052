// Writes a synthetic two-subset topical corpus (small.txt, large.txt) for demos and tests.
#include <CLI11.hpp>

#include <iostream>

#include "embal/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic two-subset corpus"};
    embal::SynthConfig cfg;
    std::string dir = "corpus";
    app.add_option("--dir", dir, "Output directory")->capture_default_str();
    app.add_option("--content-words", cfg.content_words)->capture_default_str();
    app.add_option("--function-words", cfg.function_words)->capture_default_str();
    app.add_option("--latent-dim", cfg.latent_dim)->capture_default_str();
    app.add_option("--subset-shift", cfg.subset_shift, "How far each subset moves the shared word positions")
        ->capture_default_str();
    app.add_option("--concentration", cfg.concentration)->capture_default_str();
    app.add_option("--zipf", cfg.zipf_exponent)->capture_default_str();
    app.add_option("--small-docs", cfg.small_docs)->capture_default_str();
    app.add_option("--large-docs", cfg.large_docs)->capture_default_str();
    app.add_option("--doc-length", cfg.doc_length)->capture_default_str();
    app.add_option("--function-share", cfg.function_share)->capture_default_str();
    app.add_option("--seed", cfg.seed)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& path : embal::write_synth_corpus(cfg, dir)) std::cout << path.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
