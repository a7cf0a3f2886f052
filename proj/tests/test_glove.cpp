#include <doctest.h>

#include <cmath>

#include "embal/glove.hpp"
#include "embal/kernels.hpp"
#include "embal/rng.hpp"
#include "fixtures.hpp"

using namespace embal;

TEST_SUITE("glove") {

TEST_CASE("glove_weight") {
    CHECK(glove_weight(0.0, 100.0, 0.75) == 0.0);
    CHECK(glove_weight(100.0, 100.0, 0.75) == 1.0);
    CHECK(glove_weight(1e6, 100.0, 0.75) == 1.0);
    CHECK(glove_weight(50.0, 100.0, 0.75) == doctest::Approx(0.5946035575013605).epsilon(1e-15));

    double prev = 0.0;
    for (double y = 0.0; y < 300.0; y += 0.37) {
        const double f = glove_weight(y, 100.0, 0.75);
        CHECK(f >= prev);
        CHECK(f <= 1.0);
        prev = f;
    }
}

TEST_CASE("weights below x_max scale by c^alpha") {
    Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const double y = 0.01 + 40.0 * uniform_unit(rng);
        const double c = 0.1 + 2.0 * uniform_unit(rng);
        CHECK(glove_weight(c * y, 100.0, 0.75) ==
              doctest::Approx(std::pow(c, 0.75) * glove_weight(y, 100.0, 0.75)).epsilon(1e-12));
    }
}

TEST_CASE("symmetric loss") {
    GloveConfig cfg;
    SUBCASE("hand instance counts both symmetric cells") {
        const auto y = CooccurrenceMatrix::from_weights(2, 1, 0, {{0, 1, std::exp(1.0)}});
        Matrix u(2, 1);
        u << 1.0, 0.0;
        CHECK(glove_loss(u, y, cfg) == doctest::Approx(0.13389083718220696).epsilon(1e-13));
    }
    SUBCASE("perfect factorization gives zero") {
        Matrix u(3, 2);
        u << 1.0, 0.5, -0.3, 0.8, 0.2, 0.2;
        std::vector<CooccurrenceEntry> entries;
        for (WordId i = 0; i < 3; ++i)
            for (WordId j = i; j < 3; ++j) entries.push_back({i, j, std::exp(u.row(i).dot(u.row(j)))});
        const auto y = CooccurrenceMatrix::from_weights(3, 1, 0, entries);
        CHECK(glove_loss(u, y, cfg) == doctest::Approx(0.0).epsilon(1e-24));
    }
    SUBCASE("invariant under simultaneous permutation") {
        Rng rng(8);
        const auto y = test::random_cooccurrence(6, 0.6, rng);
        Matrix u = test::random_matrix(6, 3, rng);
        const std::vector<WordId> perm{3, 5, 0, 1, 4, 2};
        std::vector<CooccurrenceEntry> moved;
        Matrix pu(6, 3);
        for (const auto& e : y.entries()) moved.push_back({perm[e.i], perm[e.j], e.weight});
        for (WordId r = 0; r < 6; ++r) pu.row(perm[r]) = u.row(r);
        const auto py = CooccurrenceMatrix::from_weights(6, 1, 0, moved);
        CHECK(glove_loss(pu, py, cfg) == doctest::Approx(glove_loss(u, y, cfg)).epsilon(1e-12));
    }
}

TEST_CASE("epochs = 0 returns the initialization") {
    Rng rng(2);
    const auto y = test::random_cooccurrence(10, 0.5, rng);
    GloveConfig cfg;
    cfg.dim = 4;
    cfg.epochs = 0;
    const GloveModel trained = train_glove(y, cfg);
    const GloveModel init = init_glove(10, cfg);
    CHECK(trained.word == init.word);
    CHECK(trained.context == init.context);
    CHECK(trained.word_bias == init.word_bias);
    CHECK(trained.context_bias == init.context_bias);
    CHECK(init.word.cwiseAbs().maxCoeff() <= 0.5 / 4);
}

TEST_CASE("single-thread training is bit-reproducible") {
    Rng rng(5);
    const auto y = test::random_cooccurrence(30, 0.3, rng);
    GloveConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 5;
    cfg.seed = 99;
    const int saved = threads();
    set_threads(1);
    const auto a = train_glove(y, cfg);
    const auto b = train_glove(y, cfg);
    set_threads(saved);
    CHECK(a.word == b.word);
    CHECK(a.context == b.context);
    CHECK(a.word_bias == b.word_bias);
    cfg.seed = 100;
    set_threads(1);
    const auto c = train_glove(y, cfg);
    set_threads(saved);
    CHECK(a.word != c.word);
}

TEST_CASE("loss decreases epoch over epoch on a tiny instance") {
    Rng rng(12);
    const auto y = test::random_cooccurrence(8, 0.7, rng);
    GloveConfig cfg;
    cfg.dim = 3;
    cfg.epochs = 30;
    cfg.learning_rate = 0.005;
    std::vector<double> losses{glove_loss(init_glove(8, cfg), y)};
    set_threads(1);
    train_glove(y, cfg, [&](int, double loss) { losses.push_back(loss); });
    for (std::size_t e = 1; e < losses.size(); ++e) CHECK(losses[e] <= losses[e - 1] + 1e-9);
    CHECK(losses.back() < losses.front());
}

TEST_CASE("export modes") {
    GloveModel m;
    m.word.resize(2, 2);
    m.context.resize(2, 2);
    m.word << 1, 2, 3, 4;
    m.context << 0.5, -1, 0, 2;
    Matrix sum(2, 2);
    sum << 1.5, 1, 3, 6;
    CHECK(export_embedding(m, ExportMode::sum).values() == sum);
    CHECK(export_embedding(m, ExportMode::word_only).values() == m.word);
    m.context.setZero();
    CHECK(export_embedding(m, ExportMode::sum).values() == m.word);
}

TEST_CASE("invalid input") {
    GloveConfig cfg;
    CHECK_THROWS_AS(train_glove(CooccurrenceMatrix(3, 5, 0), cfg), InvalidArgument);
    cfg.dim = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.dim = 5;
    cfg.x_max = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

}
