#include <doctest.h>

#include <filesystem>

#include "embal/cooccur.hpp"
#include "embal/rng.hpp"
#include "oracles.hpp"

using namespace embal;

namespace {

DocumentSet one_doc(const std::string& text) {
    DocumentSet d;
    d.add({"0", "s", text});
    return d;
}

DocumentSet random_docs(std::uint64_t seed, int n_docs, int n_words) {
    Rng rng(seed);
    DocumentSet docs;
    for (int d = 0; d < n_docs; ++d) {
        std::string text;
        const auto len = 1 + uniform_index(rng, 40);
        for (std::uint64_t t = 0; t < len; ++t) text += "w" + std::to_string(uniform_index(rng, n_words)) + " ";
        docs.add({"d" + std::to_string(d), d % 3 ? "l" : "s", text});
    }
    return docs;
}

}  // namespace

TEST_SUITE("cooccur") {

TEST_CASE("hand-counted windows") {
    SUBCASE("single token") {
        const auto docs = one_doc("a");
        CHECK(count_cooccurrences(docs, build_vocabulary(docs, 1), 5).empty());
    }
    const auto docs = one_doc("a b a");
    const auto vocab = build_vocabulary(docs, 1);
    const WordId a = vocab.find("a");
    const WordId b = vocab.find("b");
    SUBCASE("window 1") {
        const auto m = count_cooccurrences(docs, vocab, 1);
        CHECK(m.weight(a, b) == 2.0);
        CHECK(m.weight(b, a) == 2.0);
        CHECK(m.weight(a, a) == 0.0);
        CHECK(m.nnz() == 1);
    }
    SUBCASE("window 2") {
        const auto m = count_cooccurrences(docs, vocab, 2);
        CHECK(m.weight(a, b) == 2.0);
        CHECK(m.weight(a, a) == 0.5);
        CHECK(m.nnz() == 2);
    }
}

TEST_CASE("OOV tokens keep their positions and windows stop at document ends") {
    DocumentSet docs;
    docs.add({"0", "s", "a zz b"});
    docs.add({"1", "s", "b"});
    docs.add({"2", "s", "a"});
    auto vocab = build_vocabulary(docs, 2);  // zz dropped
    REQUIRE_FALSE(vocab.contains("zz"));
    const auto m = count_cooccurrences(docs, vocab, 2);
    CHECK(m.weight(vocab.find("a"), vocab.find("b")) == 0.5);
    CHECK(count_cooccurrences(docs, vocab, 1).empty());
}

TEST_CASE("counts equal the brute-force definition") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto docs = random_docs(seed, 30, 15);
        const auto vocab = build_vocabulary(docs, 4);
        const int window = 1 + static_cast<int>(seed % 6);
        const auto m = count_cooccurrences(docs, vocab, window);

        std::vector<std::vector<std::string>> tokenized;
        for (const auto& d : docs.documents()) tokenized.push_back(tokenize(d.text));
        const std::set<std::string> vset(vocab.tokens().begin(), vocab.tokens().end());
        const auto expect = oracle::brute_cooccur(tokenized, vset, window);

        CHECK(m.nnz() == expect.size());
        for (const auto& [key, w] : expect)
            CHECK(m.weight(vocab.find(key.first), vocab.find(key.second)) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("stored entries are canonical and symmetric") {
    const auto docs = random_docs(11, 50, 20);
    const auto vocab = build_vocabulary(docs, 1);
    const auto m = count_cooccurrences(docs, vocab, 5);
    for (std::size_t k = 0; k < m.nnz(); ++k) {
        const auto& e = m.entries()[k];
        CHECK(e.i <= e.j);
        CHECK(e.weight > 0.0);
        CHECK(m.weight(e.j, e.i) == e.weight);
        if (k > 0) CHECK(std::tie(m.entries()[k - 1].i, m.entries()[k - 1].j) < std::tie(e.i, e.j));
    }
}

TEST_CASE("merge_shards") {
    const auto docs = random_docs(5, 60, 20);
    const auto vocab = build_vocabulary(docs, 1);
    const auto whole = count_cooccurrences(docs, vocab, 4);

    SUBCASE("empty shard is the identity") {
        const CooccurrenceMatrix empty(vocab.size(), 4, vocab.hash());
        const std::vector<CooccurrenceMatrix> parts{whole, empty};
        CHECK(merge_shards(parts) == whole);
    }
    SUBCASE("doubling") {
        const std::vector<CooccurrenceMatrix> parts{whole, whole};
        const auto twice = merge_shards(parts);
        REQUIRE(twice.nnz() == whole.nnz());
        for (std::size_t k = 0; k < whole.nnz(); ++k) {
            CHECK(twice.units()[k] == 2 * whole.units()[k]);
            CHECK(twice.entries()[k].weight == 2.0 * whole.entries()[k].weight);
        }
    }
    SUBCASE("any document partition merges back bit-exactly") {
        Rng rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            const auto n_shards = 1 + uniform_index(rng, 5);
            std::vector<DocumentSet> shard_docs(n_shards);
            for (const auto& d : docs.documents()) shard_docs[uniform_index(rng, n_shards)].add(d);
            std::vector<CooccurrenceMatrix> parts;
            for (const auto& s : shard_docs) parts.push_back(count_cooccurrences(s, vocab, 4));
            CHECK(merge_shards(parts) == whole);
        }
    }
    SUBCASE("mismatched shards are rejected") {
        const std::vector<CooccurrenceMatrix> parts{whole, count_cooccurrences(docs, vocab, 3)};
        CHECK_THROWS_AS(merge_shards(parts), ShapeMismatch);
        CHECK_THROWS_AS(merge_shards(std::vector<CooccurrenceMatrix>{}), InvalidArgument);
    }
}

TEST_CASE("k-fold upsampling scales the subset matrix by exactly k") {
    const auto docs = random_docs(8, 45, 20);
    const auto vocab = build_vocabulary(docs, 1);
    const std::size_t n_small = docs.count("s");
    const auto base = count_cooccurrences(docs.subset("s"), vocab, 5);
    for (std::size_t k : {2, 3, 7}) {
        const auto up = count_cooccurrences(upsample(docs, "s", k * n_small, 1).subset("s"), vocab, 5);
        REQUIRE(up.nnz() == base.nnz());
        for (std::size_t c = 0; c < base.nnz(); ++c) {
            CHECK(up.entries()[c].i == base.entries()[c].i);
            CHECK(up.units()[c] == static_cast<std::int64_t>(k) * base.units()[c]);
        }
    }
}

TEST_CASE("file format round-trip restores exact counts") {
    const auto docs = random_docs(21, 40, 20);
    const auto vocab = build_vocabulary(docs, 1);
    const auto m = count_cooccurrences(docs, vocab, 15);
    const auto path = std::filesystem::temp_directory_path() / "embal_cooc_roundtrip.txt";
    m.save(path);
    const auto back = CooccurrenceMatrix::load(path, vocab.hash());
    CHECK(back == m);
    CHECK(back.exact());

    const auto arbitrary = CooccurrenceMatrix::from_weights(3, 5, 0, {{2, 0, 0.1234567}, {1, 1, 2.5}, {0, 2, 1.0}});
    CHECK_FALSE(arbitrary.exact());
    CHECK(arbitrary.nnz() == 2);
    CHECK(arbitrary.weight(0, 2) == doctest::Approx(1.1234567));
    arbitrary.save(path);
    CHECK(CooccurrenceMatrix::load(path).entries() == arbitrary.entries());
    std::filesystem::remove(path);
}

TEST_CASE("window limits") {
    const auto docs = one_doc("a b");
    const auto vocab = build_vocabulary(docs, 1);
    CHECK_THROWS_AS(count_cooccurrences(docs, vocab, 0), InvalidArgument);
    CHECK_THROWS_AS(count_cooccurrences(docs, vocab, kMaxWindow + 1), InvalidArgument);
    CHECK(unit_scale(15) == 360360);
}

}
