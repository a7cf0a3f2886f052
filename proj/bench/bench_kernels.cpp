// OpenMP kernels against their serial references on synthetic inputs.
#include <benchmark/benchmark.h>

#include "embal/cooccur.hpp"
#include "embal/glove.hpp"
#include "embal/kernels.hpp"
#include "embal/rng.hpp"

using namespace embal;

namespace {

std::vector<std::vector<WordId>> random_docs(std::size_t docs, std::size_t length, std::size_t vocab) {
    Rng rng(1);
    std::vector<std::vector<WordId>> out(docs, std::vector<WordId>(length));
    for (auto& d : out)
        for (auto& t : d) t = static_cast<WordId>(uniform_index(rng, vocab));
    return out;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols) {
    Rng rng(2);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform_unit(rng) - 0.5;
    return m;
}

WeightedPattern random_pattern(std::size_t v, std::size_t per_row) {
    Rng rng(3);
    std::vector<CooccurrenceEntry> entries;
    for (WordId i = 0; i < v; ++i)
        for (std::size_t k = 0; k < per_row; ++k)
            entries.push_back({i, static_cast<WordId>(uniform_index(rng, v)), 1.0 + 200.0 * uniform_unit(rng)});
    return weighted_pattern(CooccurrenceMatrix::from_weights(v, 5, 0, entries), 100.0, 0.75);
}

template <class F>
void count_pairs(benchmark::State& state, F kernel) {
    const auto docs = random_docs(2000, 200, 5000);
    const auto scale = unit_scale(5);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(docs, 5000, 5, scale));
}

template <class F>
void neighbors(benchmark::State& state, F kernel) {
    const Matrix m = random_matrix(state.range(0), 50);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(m, 50));
}

template <class F>
void loss(benchmark::State& state, F kernel) {
    const auto pattern = random_pattern(static_cast<std::size_t>(state.range(0)), 40);
    const Matrix u = random_matrix(state.range(0), 50);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(pattern, u));
}

}  // namespace

BENCHMARK_CAPTURE(count_pairs, ref, ref::count_window_pairs)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(count_pairs, omp, kernels::count_window_pairs)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(neighbors, ref, ref::top_neighbors)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(neighbors, omp, kernels::top_neighbors)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(loss, ref, ref::symmetric_loss)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(loss, omp, kernels::symmetric_loss)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
