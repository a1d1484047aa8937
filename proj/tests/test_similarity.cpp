#include <doctest.h>

#include <cmath>
#include <random>

#include "corpusranker/errors.hpp"
#include "corpusranker/similarity.hpp"

using namespace corpusranker;

namespace {

SparseVector sparse(std::uint32_t dim, std::initializer_list<std::pair<std::uint32_t, double>> e) {
    SparseVector v;
    v.dimension = dim;
    v.entries.assign(e.begin(), e.end());
    return v;
}

}  // namespace

TEST_CASE("cosine of identical nonzero vectors is 1") {
    DenseVector x{3.0, -1.0, 2.0};
    CHECK(cosine_similarity(x, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cosine of orthogonal vectors is 0") {
    CHECK(cosine_similarity(DenseVector{1, 0}, DenseVector{0, 1}) == 0.0);
}

TEST_CASE("cosine matches the hand-computed fixture") {
    double expected = 32.0 / std::sqrt(14.0 * 77.0);
    CHECK(cosine_similarity(DenseVector{1, 2, 3}, DenseVector{4, 5, 6}) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(cosine_similarity(DenseVector{1, 2, 3}, DenseVector{4, 5, 6}) ==
          doctest::Approx(0.974632).epsilon(1e-6));
}

TEST_CASE("sparse cosine agrees with dense on mixed patterns") {
    auto a = sparse(6, {{0, 1.0}, {2, 2.0}, {5, -1.5}});
    auto b = sparse(6, {{1, 3.0}, {2, 4.0}, {5, 2.0}});
    DenseVector da{1.0, 0.0, 2.0, 0.0, 0.0, -1.5};
    DenseVector db{0.0, 3.0, 4.0, 0.0, 0.0, 2.0};
    CHECK(cosine_similarity(a, b) == doctest::Approx(cosine_similarity(da, db)).epsilon(1e-12));
    CHECK(euclidean_distance(a, b) ==
          doctest::Approx(euclidean_distance(da, db)).epsilon(1e-12));
}

TEST_CASE("zero-norm vectors yield cosine 0, not NaN") {
    DenseVector zero{0, 0, 0};
    DenseVector x{1, 2, 3};
    CHECK(cosine_similarity(zero, x) == 0.0);
    CHECK(cosine_similarity(x, zero) == 0.0);
    CHECK(cosine_similarity(zero, zero) == 0.0);
    auto empty = sparse(4, {});
    auto y = sparse(4, {{0, 2.0}});
    CHECK(cosine_similarity(empty, y) == 0.0);
}

TEST_CASE("dimension mismatch is a contract violation") {
    CHECK_THROWS_AS(cosine_similarity(DenseVector{1, 2}, DenseVector{1, 2, 3}),
                    ContractViolation);
    CHECK_THROWS_AS(euclidean_distance(sparse(2, {}), sparse(3, {})), ContractViolation);
}

TEST_CASE("euclidean distance fixtures") {
    CHECK(euclidean_distance(DenseVector{0, 0}, DenseVector{3, 4}) == 5.0);
    DenseVector x{1.5, -2.0};
    CHECK(euclidean_distance(x, x) == 0.0);
    CHECK(euclidean_distance(DenseVector{1, 1, 1}, DenseVector{2, 3, 4}) ==
          doctest::Approx(std::sqrt(14.0)).epsilon(1e-12));
    CHECK(euclidean_distance(DenseVector{1, 1, 1}, DenseVector{2, 3, 4}) ==
          doctest::Approx(3.741657).epsilon(1e-6));
}

TEST_CASE("cosine is symmetric") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        DenseVector x(5), y(5);
        for (auto& v : x) v = dist(rng);
        for (auto& v : y) v = dist(rng);
        CHECK(cosine_similarity(x, y) == doctest::Approx(cosine_similarity(y, x)).epsilon(1e-15));
    }
}

TEST_CASE("cosine is invariant under positive scaling") {
    DenseVector x{0.3, -1.2, 2.2};
    DenseVector y{1.0, 0.4, -0.2};
    double base = cosine_similarity(x, y);
    for (double c : {0.5, 3.0, 100.0}) {
        DenseVector scaled = y;
        for (auto& v : scaled) v *= c;
        CHECK(cosine_similarity(x, scaled) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("cosine of non-negative vectors stays in [0,1]") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        DenseVector x(4), y(4);
        for (auto& v : x) v = dist(rng);
        for (auto& v : y) v = dist(rng);
        double c = cosine_similarity(x, y);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
}

TEST_CASE("triangle inequality holds for euclidean distance") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        DenseVector a(6), b(6), c(6);
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        for (auto& v : c) v = dist(rng);
        CHECK(euclidean_distance(a, c) <=
              euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-9);
    }
}

TEST_CASE("score_all produces the full matrix") {
    std::vector<DenseVector> topics{{1, 0}, {0, 1}};
    std::vector<DenseVector> titles{{1, 0}, {1, 1}, {0, 2}};
    auto m = score_all(topics, titles, Measure::cosine);
    REQUIRE(m.rows == 2);
    REQUIRE(m.cols == 3);
    CHECK(m.at(0, 0) == doctest::Approx(1.0));
    CHECK(m.at(0, 2) == 0.0);
    CHECK(m.at(1, 2) == doctest::Approx(1.0));
    // brute-force recomputation, cell by cell
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            CHECK(m.at(r, c) == cosine_similarity(topics[r], titles[c]));
        }
    }
}

TEST_CASE("parallel score_all equals sequential") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<DenseVector> topics(5, DenseVector(8));
    std::vector<DenseVector> titles(37, DenseVector(8));
    for (auto& t : topics) {
        for (auto& v : t) v = dist(rng);
    }
    for (auto& t : titles) {
        for (auto& v : t) v = dist(rng);
    }
    auto seq = score_all(topics, titles, Measure::euclidean, 1);
    auto par = score_all(topics, titles, Measure::euclidean, 4);
    CHECK(seq.values == par.values);
}
