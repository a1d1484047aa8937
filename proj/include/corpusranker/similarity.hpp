#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "corpusranker/embedding.hpp"
#include "corpusranker/sparse.hpp"

namespace corpusranker {

enum class Measure { cosine, euclidean };

const char* measure_name(Measure m);
Measure measure_from_name(const std::string& name);
// similarity sorts descending, distance ascending
bool measure_is_distance(Measure m);

// x . y / (|x| |y|); 0 when either norm is zero, so degenerate vectors sort
// last under a similarity measure. Dimension mismatch raises
// ContractViolation.
double cosine_similarity(const SparseVector& x, const SparseVector& y);
double cosine_similarity(const DenseVector& x, const DenseVector& y);

double euclidean_distance(const SparseVector& x, const SparseVector& y);
double euclidean_distance(const DenseVector& x, const DenseVector& y);

// Row-major topics x titles score matrix.
struct ScoreMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    std::vector<double> row(std::size_t r) const {
        return std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                   values.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    }
};

// Scores every topic against every title. Cells are independent, so the
// parallel path partitions rows without changing any value.
ScoreMatrix score_all(const std::vector<SparseVector>& topics,
                      const std::vector<SparseVector>& titles, Measure measure,
                      unsigned threads = 1);
ScoreMatrix score_all(const std::vector<DenseVector>& topics,
                      const std::vector<DenseVector>& titles, Measure measure,
                      unsigned threads = 1);

}  // namespace corpusranker
