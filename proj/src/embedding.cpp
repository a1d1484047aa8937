#include "corpusranker/embedding.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corpusranker/container.hpp"
#include "corpusranker/errors.hpp"

namespace corpusranker {

std::span<const double> EmbeddingTable::vector_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) {
        throw LookupError("token not in embedding table: '" + token + "'");
    }
    return vector_at(it->second);
}

std::span<const double> EmbeddingTable::vector_at(std::size_t index) const {
    return std::span<const double>(matrix_.data() + index * dimension_, dimension_);
}

void EmbeddingTable::add(const std::string& token, std::span<const double> vector) {
    if (vector.size() != dimension_) {
        throw ContractViolation("embedding vector length " + std::to_string(vector.size()) +
                                " does not match table dimension " + std::to_string(dimension_));
    }
    for (double v : vector) {
        if (!std::isfinite(v)) {
            throw ValidationError("non-finite component in embedding for token '" + token + "'");
        }
    }
    auto [it, inserted] = index_.emplace(token, static_cast<std::uint32_t>(tokens_.size()));
    if (!inserted) {
        throw ValidationError("duplicate token in embedding table: '" + token + "'");
    }
    tokens_.push_back(token);
    matrix_.insert(matrix_.end(), vector.begin(), vector.end());
}

EmbeddingTable load_embedding_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open embedding file: " + path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("embedding file is empty: " + path);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream header(line);
    std::uint64_t count = 0;
    std::uint32_t dimension = 0;
    if (!(header >> count >> dimension) || dimension == 0) {
        throw FormatError("embedding header must be '<count> <dimension>' (line 1)");
    }

    EmbeddingTable table(dimension, TableProvenance::loaded);
    std::vector<double> vec(dimension);
    std::size_t lineno = 1;
    std::uint64_t seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto space = line.find(' ');
        if (space == std::string::npos || space == 0) {
            throw FormatError("embedding line " + std::to_string(lineno) +
                              " has no token/value separator");
        }
        std::string token = line.substr(0, space);

        const char* ptr = line.data() + space + 1;
        const char* end = line.data() + line.size();
        for (std::uint32_t d = 0; d < dimension; ++d) {
            while (ptr < end && *ptr == ' ') ++ptr;
            auto [next, ec] = std::from_chars(ptr, end, vec[d]);
            if (ec != std::errc{}) {
                throw FormatError("embedding line " + std::to_string(lineno) + " has " +
                                  std::to_string(d) + " values, expected " +
                                  std::to_string(dimension));
            }
            ptr = next;
        }
        while (ptr < end && *ptr == ' ') ++ptr;
        if (ptr != end) {
            throw FormatError("embedding line " + std::to_string(lineno) +
                              " has more values than the declared dimension " +
                              std::to_string(dimension));
        }
        try {
            table.add(token, vec);
        } catch (const ValidationError& e) {
            throw FormatError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        }
        ++seen;
    }
    if (seen != count) {
        throw FormatError("embedding header declares " + std::to_string(count) +
                          " tokens but file contains " + std::to_string(seen));
    }
    return table;
}

void save_embedding_table(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write embedding file: " + path);
    }
    out << table.size() << ' ' << table.dimension() << '\n';
    char buf[32];
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table.token_at(i);
        for (double v : table.vector_at(i)) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

std::string encode_embedding_table(const EmbeddingTable& table) {
    ByteWriter w;
    w.u32(table.dimension());
    w.u8(table.provenance() == TableProvenance::trained ? 0 : 1);
    w.u64(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        w.str(table.token_at(i));
        for (double v : table.vector_at(i)) w.f64(v);
    }
    return w.take();
}

EmbeddingTable decode_embedding_table(std::string_view payload) {
    ByteReader r(payload);
    std::uint32_t dimension = r.u32();
    TableProvenance prov = r.u8() == 0 ? TableProvenance::trained : TableProvenance::loaded;
    std::uint64_t count = r.u64();
    EmbeddingTable table(dimension, prov);
    std::vector<double> vec(dimension);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string token = r.str();
        for (std::uint32_t d = 0; d < dimension; ++d) vec[d] = r.f64();
        table.add(token, vec);
    }
    return table;
}

DenseVector average_pool(const TokenList& tokens, const EmbeddingTable& table,
                         const PoolingOptions& opts) {
    DenseVector out(table.dimension(), 0.0);
    std::size_t denom = 0;
    for (const auto& tok : tokens.tokens) {
        if (table.contains(tok)) {
            auto vec = table.vector_of(tok);
            for (std::size_t d = 0; d < out.size(); ++d) out[d] += vec[d];
            ++denom;
        } else if (opts.count_oov_in_denominator) {
            ++denom;
        }
    }
    if (denom == 0) return out;  // zero vector for empty / all-OOV input
    for (double& v : out) v /= static_cast<double>(denom);
    return out;
}

DenseVector tfidf_weighted_pool(const TokenList& tokens, const EmbeddingTable& table,
                                const Vocabulary& vocab, const PoolingOptions& opts) {
    DenseVector out(table.dimension(), 0.0);
    if (tokens.empty()) return out;

    // tf depends on occurrence counts within this token list
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& tok : tokens.tokens) ++counts[tok];
    const double total = static_cast<double>(tokens.size());

    std::size_t denom = 0;
    double weight_sum = 0.0;
    for (const auto& tok : tokens.tokens) {
        const bool in_table = table.contains(tok);
        if (!in_table) {
            if (opts.count_oov_in_denominator) ++denom;
            continue;
        }
        ++denom;
        double weight = 0.0;
        auto idx = vocab.index_of(tok);
        if (idx >= 0) {
            double term_freq = static_cast<double>(counts[tok]) / total;
            weight = term_freq * idf_by_index(static_cast<std::size_t>(idx), vocab);
        }
        weight_sum += weight;
        if (weight == 0.0) continue;
        auto vec = table.vector_of(tok);
        for (std::size_t d = 0; d < out.size(); ++d) out[d] += weight * vec[d];
    }

    double divisor =
        opts.normalize_by_weight_sum ? weight_sum : static_cast<double>(denom);
    if (divisor == 0.0) return DenseVector(table.dimension(), 0.0);
    for (double& v : out) v /= divisor;
    return out;
}

}  // namespace corpusranker
