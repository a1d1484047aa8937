#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpusranker/preprocess.hpp"
#include "corpusranker/sparse.hpp"

namespace corpusranker {

using DenseVector = std::vector<double>;

enum class TableProvenance { trained, loaded };

// token -> fixed-dimension dense vector map. Token order is part of the type:
// persisting and reloading preserves it, and trained tables list tokens in
// training-vocabulary order.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(std::uint32_t dimension, TableProvenance provenance)
        : dimension_(dimension), provenance_(provenance) {}

    std::uint32_t dimension() const { return dimension_; }
    TableProvenance provenance() const { return provenance_; }
    std::size_t size() const { return tokens_.size(); }

    bool contains(const std::string& token) const { return index_.count(token) != 0; }
    // Raises LookupError when absent.
    std::span<const double> vector_of(const std::string& token) const;
    std::span<const double> vector_at(std::size_t index) const;
    const std::string& token_at(std::size_t index) const { return tokens_.at(index); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    // Vector must have exactly dimension() finite components.
    void add(const std::string& token, std::span<const double> vector);

private:
    std::uint32_t dimension_ = 0;
    TableProvenance provenance_ = TableProvenance::trained;
    std::vector<std::string> tokens_;
    std::vector<double> matrix_;  // row-major, tokens_.size() x dimension_
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Text format: header "<count> <dimension>", then one line per token with
// `dimension` space-separated decimal floats. UTF-8, LF.
EmbeddingTable load_embedding_table(const std::string& path);
void save_embedding_table(const EmbeddingTable& table, const std::string& path);

// Binary container section round-trip (exact double bits).
std::string encode_embedding_table(const EmbeddingTable& table);
EmbeddingTable decode_embedding_table(std::string_view payload);

struct PoolingOptions {
    // Count out-of-table tokens in the averaging denominator (off by
    // default: OOV tokens are excluded from both sum and count).
    bool count_oov_in_denominator = false;
    // Divide the TF-IDF-weighted sum by the sum of weights instead of the
    // token count.
    bool normalize_by_weight_sum = false;
};

// Component-wise mean of the vectors of in-table tokens. Empty or all-OOV
// input yields the zero vector of the table's dimension.
DenseVector average_pool(const TokenList& tokens, const EmbeddingTable& table,
                         const PoolingOptions& opts = {});

// Sum of tfidf(token) * vector(token) over in-table token occurrences,
// divided by the in-table token count (weight-sum normalization available
// behind opts.normalize_by_weight_sum).
DenseVector tfidf_weighted_pool(const TokenList& tokens, const EmbeddingTable& table,
                                const Vocabulary& vocab, const PoolingOptions& opts = {});

}  // namespace corpusranker
