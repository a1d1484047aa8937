#include <doctest.h>

#include <cmath>
#include <random>

#include "corpusranker/similarity.hpp"
#include "corpusranker/word2vec.hpp"
#include "support/synth.hpp"

using namespace corpusranker;

namespace {

TokenList toks(std::initializer_list<const char*> words) {
    TokenList t;
    for (const char* w : words) t.tokens.emplace_back(w);
    return t;
}

std::vector<TokenList> toy_corpus() {
    return {
        toks({"virus", "spreads", "fast"}),     toks({"virus", "causes", "disease"}),
        toks({"vaccine", "stops", "virus"}),    toks({"masks", "slow", "spread"}),
        toks({"disease", "spreads", "slowly"}), toks({"vaccine", "protects", "people"}),
        toks({"people", "wear", "masks"}),      toks({"fast", "spread", "causes", "panic"}),
        toks({"slow", "careful", "response"}),  toks({"response", "stops", "disease"}),
    };
}

double loss_of(Word2VecParams& params, std::uint32_t center, std::uint32_t positive,
               std::span<const std::uint32_t> negatives) {
    std::vector<double> gi(params.dimension());
    std::vector<double> go((1 + negatives.size()) * params.dimension());
    return negative_sampling_gradients(params, center, positive, negatives, gi, go);
}

}  // namespace

TEST_CASE("zero parameters are a gradient fixed point") {
    Word2VecParams params(5, 4);
    std::vector<std::uint32_t> negatives{2, 3};
    std::vector<double> gi(4);
    std::vector<double> go(3 * 4);
    double loss = negative_sampling_gradients(params, 0, 1, negatives, gi, go);
    // sigmoid(0) = 0.5 everywhere
    CHECK(loss == doctest::Approx(3.0 * -std::log(0.5)).epsilon(1e-12));
    for (double g : gi) CHECK(g == 0.0);
    for (double g : go) CHECK(g == 0.0);
}

TEST_CASE("analytic gradients match central finite differences") {
    const std::uint32_t dim = 8;
    const std::size_t vocab = 20;
    Word2VecParams params(vocab, dim);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    for (double& v : params.input_matrix()) v = dist(rng);
    for (double& v : params.output_matrix()) v = dist(rng);

    const std::uint32_t center = 3;
    const std::uint32_t positive = 7;
    const std::vector<std::uint32_t> negatives{1, 9, 14, 18};

    std::vector<double> gi(dim);
    std::vector<double> go((1 + negatives.size()) * dim);
    negative_sampling_gradients(params, center, positive, negatives, gi, go);

    const double h = 1e-4;
    int checked = 0;

    auto check_coord = [&](std::vector<double>& matrix, std::size_t flat, double analytic) {
        double saved = matrix[flat];
        matrix[flat] = saved + h;
        double up = loss_of(params, center, positive, negatives);
        matrix[flat] = saved - h;
        double down = loss_of(params, center, positive, negatives);
        matrix[flat] = saved;
        double numeric = (up - down) / (2 * h);
        double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-8});
        CAPTURE(flat);
        CHECK(std::abs(numeric - analytic) / denom < 1e-3);
        ++checked;
    };

    for (std::uint32_t d = 0; d < dim; ++d) {
        check_coord(params.input_matrix(), center * dim + d, gi[d]);
        check_coord(params.output_matrix(), positive * dim + d, go[d]);
        for (std::size_t n = 0; n < negatives.size(); ++n) {
            check_coord(params.output_matrix(), negatives[n] * dim + d, go[(n + 1) * dim + d]);
        }
        // an uninvolved row must have zero gradient
        double saved = params.output_matrix()[0 * dim + d];
        params.output_matrix()[0 * dim + d] = saved + h;
        double up = loss_of(params, center, positive, negatives);
        params.output_matrix()[0 * dim + d] = saved;
        CHECK(up == loss_of(params, center, positive, negatives));
    }
    CHECK(checked >= 48);
}

TEST_CASE("training produces finite vectors of the requested shape") {
    TrainConfig cfg;
    cfg.dimension = 100;
    cfg.epochs = 2;
    cfg.seed = 7;
    auto result = train_word2vec(toy_corpus(), cfg);
    CHECK(result.table.dimension() == 100);
    CHECK(result.table.size() == 17);  // distinct tokens in the toy corpus
    for (std::size_t i = 0; i < result.table.size(); ++i) {
        for (double v : result.table.vector_at(i)) CHECK(std::isfinite(v));
    }
    CHECK(result.epochs.size() == 2);
    CHECK(result.epochs[0].pairs > 0);
}

TEST_CASE("single sentence of two tokens trains exactly those tokens") {
    TrainConfig cfg;
    cfg.dimension = 4;
    cfg.epochs = 1;
    auto result = train_word2vec({toks({"a", "b"})}, cfg);
    REQUIRE(result.table.size() == 2);
    CHECK(result.table.contains("a"));
    CHECK(result.table.contains("b"));
}

TEST_CASE("fixed seed single-thread training is bit-reproducible") {
    TrainConfig cfg;
    cfg.dimension = 16;
    cfg.epochs = 3;
    cfg.seed = 99;
    auto a = train_word2vec(toy_corpus(), cfg);
    auto b = train_word2vec(toy_corpus(), cfg);
    REQUIRE(a.table.size() == b.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) {
        CHECK(a.table.token_at(i) == b.table.token_at(i));
        auto va = a.table.vector_at(i);
        auto vb = b.table.vector_at(i);
        for (std::size_t d = 0; d < va.size(); ++d) CHECK(va[d] == vb[d]);
    }
}

TEST_CASE("zero learning rate leaves the initialization untouched") {
    TrainConfig short_run;
    short_run.dimension = 8;
    short_run.epochs = 1;
    short_run.seed = 5;
    short_run.initial_learning_rate = 0.0;
    short_run.min_learning_rate = 0.0;
    TrainConfig long_run = short_run;
    long_run.epochs = 6;

    auto a = train_word2vec(toy_corpus(), short_run);
    auto b = train_word2vec(toy_corpus(), long_run);
    REQUIRE(a.table.size() == b.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) {
        auto va = a.table.vector_at(i);
        auto vb = b.table.vector_at(i);
        for (std::size_t d = 0; d < va.size(); ++d) CHECK(va[d] == vb[d]);
    }
}

TEST_CASE("mean epoch loss is non-increasing within sgd tolerance") {
    TrainConfig cfg;
    cfg.dimension = 24;
    cfg.epochs = 8;
    cfg.seed = 11;
    cfg.window = 2;
    auto result = train_word2vec(test_support::planted_synonym_corpus(11), cfg);
    REQUIRE(result.epochs.size() == 8);
    for (std::size_t e = 1; e < result.epochs.size(); ++e) {
        CHECK(result.epochs[e].mean_pair_loss <=
              result.epochs[e - 1].mean_pair_loss * 1.05);
    }
}

TEST_CASE("cbow also trains and reproduces") {
    TrainConfig cfg;
    cfg.architecture = W2vArchitecture::cbow;
    cfg.dimension = 12;
    cfg.epochs = 3;
    cfg.seed = 21;
    auto a = train_word2vec(toy_corpus(), cfg);
    auto b = train_word2vec(toy_corpus(), cfg);
    REQUIRE(a.table.size() > 0);
    for (std::size_t i = 0; i < a.table.size(); ++i) {
        auto va = a.table.vector_at(i);
        auto vb = b.table.vector_at(i);
        for (std::size_t d = 0; d < va.size(); ++d) CHECK(va[d] == vb[d]);
    }
}

TEST_CASE("degenerate corpora raise training errors") {
    TrainConfig cfg;
    cfg.dimension = 4;
    CHECK_THROWS_AS(train_word2vec({}, cfg), TrainingError);
    CHECK_THROWS_AS(train_word2vec({toks({"only"})}, cfg), TrainingError);
    // two tokens but never in the same sentence: no pair
    CHECK_THROWS_AS(train_word2vec({toks({"a"}), toks({"b"})}, cfg), TrainingError);
    // min_count filters everything
    TrainConfig strict = cfg;
    strict.min_count = 5;
    CHECK_THROWS_AS(train_word2vec({toks({"a", "b"})}, strict), TrainingError);
}

TEST_CASE("planted synonyms end up closer than random pairs") {
    TrainConfig cfg;
    cfg.dimension = 24;
    cfg.window = 2;
    cfg.epochs = 10;
    cfg.initial_learning_rate = 0.05;

    int wins = 0;
    for (std::uint64_t seed : {101u, 202u, 303u}) {
        cfg.seed = seed;
        auto result = train_word2vec(test_support::planted_synonym_corpus(seed), cfg);
        const auto& table = result.table;
        auto va = table.vector_of("synalpha");
        auto vb = table.vector_of("synbeta");
        DenseVector a(va.begin(), va.end());
        DenseVector b(vb.begin(), vb.end());
        double syn_cos = cosine_similarity(a, b);

        std::mt19937_64 rng(seed * 7 + 1);
        std::vector<double> random_cos;
        for (int i = 0; i < 100; ++i) {
            std::size_t x = rng() % table.size();
            std::size_t y = rng() % table.size();
            if (x == y) {
                --i;
                continue;
            }
            auto vx = table.vector_at(x);
            auto vy = table.vector_at(y);
            DenseVector dx(vx.begin(), vx.end());
            DenseVector dy(vy.begin(), vy.end());
            random_cos.push_back(cosine_similarity(dx, dy));
        }
        std::sort(random_cos.begin(), random_cos.end());
        double median = random_cos[random_cos.size() / 2];
        if (syn_cos > median) ++wins;
    }
    CHECK(wins >= 2);
}
