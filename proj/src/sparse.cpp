#include "corpusranker/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "corpusranker/errors.hpp"

namespace corpusranker {

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> document_frequency,
                       std::uint64_t n_documents)
    : tokens_(std::move(tokens)), df_(std::move(document_frequency)), n_documents_(n_documents) {
    if (tokens_.size() != df_.size()) {
        throw ContractViolation("vocabulary token/df size mismatch");
    }
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        index_[tokens_[i]] = static_cast<std::uint32_t>(i);
    }
}

std::int64_t Vocabulary::index_of(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(const std::vector<TokenList>& docs,
                            const std::vector<TokenList>& topics) {
    // std::map keeps tokens sorted, which pins the index assignment.
    std::map<std::string, std::uint64_t> df;
    for (const auto& doc : docs) {
        std::vector<const std::string*> distinct;
        distinct.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens) distinct.push_back(&tok);
        std::sort(distinct.begin(), distinct.end(),
                  [](const std::string* a, const std::string* b) { return *a < *b; });
        distinct.erase(std::unique(distinct.begin(), distinct.end(),
                                   [](const std::string* a, const std::string* b) {
                                       return *a == *b;
                                   }),
                       distinct.end());
        for (const auto* tok : distinct) ++df[*tok];
    }
    for (const auto& topic : topics) {
        for (const auto& tok : topic.tokens) df.try_emplace(tok, 0);
    }
    if (df.empty()) {
        throw ValidationError("cannot build vocabulary: all token lists are empty");
    }

    std::vector<std::string> tokens;
    std::vector<std::uint64_t> freqs;
    tokens.reserve(df.size());
    freqs.reserve(df.size());
    for (auto& [tok, count] : df) {
        tokens.push_back(tok);
        freqs.push_back(count);
    }
    return Vocabulary(std::move(tokens), std::move(freqs), docs.size());
}

double SparseVector::l2_norm() const {
    double sum = 0.0;
    for (const auto& [_, v] : entries) sum += v * v;
    return std::sqrt(sum);
}

double SparseVector::l1_norm() const {
    double sum = 0.0;
    for (const auto& [_, v] : entries) sum += std::abs(v);
    return sum;
}

SparseVector bow_vector(const TokenList& tokens, const Vocabulary& vocab) {
    std::map<std::uint32_t, double> counts;
    for (const auto& tok : tokens.tokens) {
        auto idx = vocab.index_of(tok);
        if (idx >= 0) counts[static_cast<std::uint32_t>(idx)] += 1.0;
    }
    SparseVector out;
    out.dimension = static_cast<std::uint32_t>(vocab.size());
    out.entries.assign(counts.begin(), counts.end());
    return out;
}

double tf(const std::string& token, const TokenList& tokens) {
    if (tokens.empty()) {
        throw ValidationError("tf undefined for an empty token list");
    }
    std::size_t count = 0;
    for (const auto& tok : tokens.tokens) {
        if (tok == token) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(tokens.size());
}

double idf_by_index(std::size_t index, const Vocabulary& vocab) {
    std::uint64_t df = vocab.document_frequency(index);
    if (df == 0) df = 1;  // topic-only token
    return std::log(static_cast<double>(vocab.n_documents()) / static_cast<double>(df));
}

double idf(const std::string& token, const Vocabulary& vocab) {
    auto idx = vocab.index_of(token);
    if (idx < 0) {
        throw ValidationError("idf of out-of-vocabulary token '" + token + "'");
    }
    return idf_by_index(static_cast<std::size_t>(idx), vocab);
}

SparseVector tfidf_vector(const TokenList& tokens, const Vocabulary& vocab) {
    SparseVector out;
    out.dimension = static_cast<std::uint32_t>(vocab.size());
    if (tokens.empty()) return out;

    std::map<std::uint32_t, std::size_t> counts;
    for (const auto& tok : tokens.tokens) {
        auto idx = vocab.index_of(tok);
        if (idx >= 0) ++counts[static_cast<std::uint32_t>(idx)];
    }
    const double total = static_cast<double>(tokens.size());
    for (const auto& [idx, count] : counts) {
        double weight = (static_cast<double>(count) / total) * idf_by_index(idx, vocab);
        if (weight != 0.0) out.entries.emplace_back(idx, weight);
    }
    return out;
}

void dump_vocabulary(const Vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write vocabulary dump: " + path);
    }
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        out << vocab.token_at(i) << '\t' << i << '\t' << vocab.document_frequency(i) << '\n';
    }
}

}  // namespace corpusranker
