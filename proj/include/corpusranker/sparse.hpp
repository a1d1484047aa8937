#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpusranker/preprocess.hpp"

namespace corpusranker {

// Shared vocabulary over documents and topics. Indices are contiguous and
// assigned in lexicographic token order, so builds are deterministic.
// document_frequency counts documents only; tokens that appear only in
// topics carry df = 0 and are smoothed to 1 inside idf().
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> document_frequency,
               std::uint64_t n_documents);

    std::size_t size() const { return tokens_.size(); }
    std::uint64_t n_documents() const { return n_documents_; }

    // -1 when the token is out of vocabulary.
    std::int64_t index_of(const std::string& token) const;
    const std::string& token_at(std::size_t index) const { return tokens_.at(index); }
    std::uint64_t document_frequency(std::size_t index) const { return df_.at(index); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::vector<std::uint64_t>& document_frequencies() const { return df_; }

private:
    std::vector<std::string> tokens_;
    std::vector<std::uint64_t> df_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::uint64_t n_documents_ = 0;
};

// Union of all document and topic tokens. Topic-only tokens enter with
// df = 0 so query words are always in-vocabulary. Raises ValidationError when
// every input is empty.
Vocabulary build_vocabulary(const std::vector<TokenList>& docs,
                            const std::vector<TokenList>& topics);

// Term-indexed vector with strictly increasing indices and no explicit zeros.
struct SparseVector {
    std::uint32_t dimension = 0;
    std::vector<std::pair<std::uint32_t, double>> entries;

    double l2_norm() const;
    double l1_norm() const;

    bool operator==(const SparseVector&) const = default;
};

// Raw term counts of in-vocabulary tokens; OOV tokens are ignored.
SparseVector bow_vector(const TokenList& tokens, const Vocabulary& vocab);

// Occurrences of token divided by total token count (duplicates and OOV
// tokens included in the denominator). Empty token list raises
// ValidationError.
double tf(const std::string& token, const TokenList& tokens);

// Natural log of n_documents over document frequency; df = 0 (topic-only
// token) is smoothed to 1.
double idf(const std::string& token, const Vocabulary& vocab);
double idf_by_index(std::size_t index, const Vocabulary& vocab);

// tf x idf per distinct in-vocabulary token; zero products are omitted, so a
// token present in every document never appears. Empty input yields an empty
// vector.
SparseVector tfidf_vector(const TokenList& tokens, const Vocabulary& vocab);

// "token<TAB>index<TAB>df" dump, one line per token, index order.
void dump_vocabulary(const Vocabulary& vocab, const std::string& path);

}  // namespace corpusranker
