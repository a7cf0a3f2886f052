#include <doctest.h>

#include "embal/glove.hpp"
#include "embal/kernels.hpp"
#include "fixtures.hpp"

using namespace embal;

TEST_SUITE("kernels") {

TEST_CASE("window counting agrees with the serial version") {
    Rng rng(1);
    std::vector<std::vector<WordId>> docs(40);
    for (auto& d : docs) {
        d.resize(uniform_index(rng, 60));
        for (auto& t : d) t = uniform_index(rng, 10) == 0 ? Vocabulary::npos : static_cast<WordId>(uniform_index(rng, 25));
    }
    for (const int window : {1, 3, 8}) {
        const auto scale = unit_scale(window);
        CHECK(kernels::count_window_pairs(docs, 25, window, scale) == ref::count_window_pairs(docs, 25, window, scale));
    }
}

TEST_CASE("top neighbors agree with the serial version") {
    Rng rng(2);
    Matrix m = test::random_matrix(70, 5, rng);
    m.row(3).setZero();
    m.row(40) = m.row(41);
    const auto a = kernels::top_neighbors(m, 12);
    const auto b = ref::top_neighbors(m, 12);
    CHECK(a.ids == b.ids);
    CHECK(a.valid == b.valid);
    CHECK((a.similarity - b.similarity).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(a.ids.row(3).maxCoeff() == -1);
    for (Eigen::Index r = 0; r < 70; ++r)
        for (Eigen::Index c = 0; c < 12; ++c) CHECK(a.ids(r, c) != 3);
}

TEST_CASE("symmetric loss agrees with the serial version") {
    Rng rng(3);
    const auto y = test::random_cooccurrence(40, 0.3, rng);
    const auto pattern = weighted_pattern(y, 100.0, 0.75);
    const Matrix u = test::random_matrix(40, 6, rng);
    const auto a = kernels::symmetric_loss(pattern, u);
    const auto b = ref::symmetric_loss(pattern, u);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-13));
    CHECK((a.gradient - b.gradient).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, b.gradient.cwiseAbs().maxCoeff()));
}

TEST_CASE("normalize rows") {
    Matrix m(3, 2);
    m << 3, 4, 0, 0, -2, 0;
    const auto [n, valid] = normalize_rows(m);
    CHECK(valid == std::vector<bool>{true, false, true});
    CHECK(n(0, 0) == doctest::Approx(0.6));
    CHECK(n.row(1).isZero(0.0));
    CHECK(n(2, 0) == -1.0);
}

}
