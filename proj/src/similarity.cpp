#include "corpusranker/similarity.hpp"

#include <cmath>
#include <thread>

#include "corpusranker/errors.hpp"

namespace corpusranker {

const char* measure_name(Measure m) { return m == Measure::cosine ? "cosine" : "euclidean"; }

Measure measure_from_name(const std::string& name) {
    if (name == "cosine") return Measure::cosine;
    if (name == "euclidean") return Measure::euclidean;
    throw ConfigError("unknown measure '" + name + "' (expected cosine or euclidean)");
}

bool measure_is_distance(Measure m) { return m == Measure::euclidean; }

namespace {

void check_dims(std::size_t a, std::size_t b) {
    if (a != b) {
        throw ContractViolation("vector dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

// dot product over the sorted-index intersection
double sparse_dot(const SparseVector& x, const SparseVector& y) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.entries.size() && j < y.entries.size()) {
        if (x.entries[i].first < y.entries[j].first) {
            ++i;
        } else if (x.entries[i].first > y.entries[j].first) {
            ++j;
        } else {
            dot += x.entries[i].second * y.entries[j].second;
            ++i;
            ++j;
        }
    }
    return dot;
}

}  // namespace

double cosine_similarity(const SparseVector& x, const SparseVector& y) {
    check_dims(x.dimension, y.dimension);
    double nx = x.l2_norm();
    double ny = y.l2_norm();
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return sparse_dot(x, y) / (nx * ny);
}

double cosine_similarity(const DenseVector& x, const DenseVector& y) {
    check_dims(x.size(), y.size());
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        dot += x[d] * y[d];
        nx += x[d] * x[d];
        ny += y[d] * y[d];
    }
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return dot / (std::sqrt(nx) * std::sqrt(ny));
}

double euclidean_distance(const SparseVector& x, const SparseVector& y) {
    check_dims(x.dimension, y.dimension);
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.entries.size() || j < y.entries.size()) {
        if (j >= y.entries.size() ||
            (i < x.entries.size() && x.entries[i].first < y.entries[j].first)) {
            sum += x.entries[i].second * x.entries[i].second;
            ++i;
        } else if (i >= x.entries.size() || x.entries[i].first > y.entries[j].first) {
            sum += y.entries[j].second * y.entries[j].second;
            ++j;
        } else {
            double diff = x.entries[i].second - y.entries[j].second;
            sum += diff * diff;
            ++i;
            ++j;
        }
    }
    return std::sqrt(sum);
}

double euclidean_distance(const DenseVector& x, const DenseVector& y) {
    check_dims(x.size(), y.size());
    double sum = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        double diff = x[d] - y[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

namespace {

template <typename Vec>
double score_one(const Vec& a, const Vec& b, Measure measure) {
    return measure == Measure::cosine ? cosine_similarity(a, b) : euclidean_distance(a, b);
}

template <typename Vec>
ScoreMatrix score_all_impl(const std::vector<Vec>& topics, const std::vector<Vec>& titles,
                           Measure measure, unsigned threads) {
    ScoreMatrix out;
    out.rows = topics.size();
    out.cols = titles.size();
    out.values.assign(out.rows * out.cols, 0.0);

    auto run_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            double* row = out.values.data() + r * out.cols;
            for (std::size_t c = 0; c < out.cols; ++c) {
                row[c] = score_one(topics[r], titles[c], measure);
            }
        }
    };

    if (threads <= 1 || out.rows <= 1) {
        run_rows(0, out.rows);
        return out;
    }
    unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(out.rows));
    std::vector<std::thread> pool;
    std::size_t chunk = (out.rows + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(out.rows, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_rows, begin, end);
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

ScoreMatrix score_all(const std::vector<SparseVector>& topics,
                      const std::vector<SparseVector>& titles, Measure measure, unsigned threads) {
    return score_all_impl(topics, titles, measure, threads);
}

ScoreMatrix score_all(const std::vector<DenseVector>& topics,
                      const std::vector<DenseVector>& titles, Measure measure, unsigned threads) {
    return score_all_impl(topics, titles, measure, threads);
}

}  // namespace corpusranker
