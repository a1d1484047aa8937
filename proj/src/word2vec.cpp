#include "corpusranker/word2vec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <thread>

namespace corpusranker {

const char* architecture_name(W2vArchitecture a) {
    return a == W2vArchitecture::cbow ? "cbow" : "skipgram";
}

W2vArchitecture architecture_from_name(const std::string& name) {
    if (name == "cbow") return W2vArchitecture::cbow;
    if (name == "skipgram" || name == "sg") return W2vArchitecture::skipgram;
    throw ConfigError("unknown word2vec architecture '" + name + "' (expected cbow or skipgram)");
}

namespace {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Cumulative unigram-to-the-3/4 distribution for negative sampling.
class NegativeSampler {
public:
    explicit NegativeSampler(const std::vector<std::uint64_t>& frequencies) {
        cumulative_.reserve(frequencies.size());
        double total = 0.0;
        for (std::uint64_t f : frequencies) {
            total += std::pow(static_cast<double>(f), 0.75);
            cumulative_.push_back(total);
        }
    }

    std::uint32_t draw(SplitMix64& rng) const {
        double u = rng.next_double() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
        if (idx >= cumulative_.size()) idx = cumulative_.size() - 1;
        return static_cast<std::uint32_t>(idx);
    }

    // Rejects the positive target; bounded retry keeps the draw total.
    std::uint32_t draw_negative(SplitMix64& rng, std::uint32_t positive) const {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::uint32_t cand = draw(rng);
            if (cand != positive) return cand;
        }
        return (positive + 1) % static_cast<std::uint32_t>(cumulative_.size());
    }

private:
    std::vector<double> cumulative_;
};

struct TrainVocab {
    std::vector<std::string> tokens;        // frequency-descending, ties lexicographic
    std::vector<std::uint64_t> frequencies;
    std::unordered_map<std::string, std::uint32_t> index;
};

TrainVocab build_train_vocab(const std::vector<TokenList>& sentences, std::uint32_t min_count) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& sentence : sentences) {
        for (const auto& tok : sentence.tokens) ++counts[tok];
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [tok, count] : counts) {
        if (count >= min_count) kept.emplace_back(tok, count);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    TrainVocab vocab;
    vocab.tokens.reserve(kept.size());
    vocab.frequencies.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        vocab.tokens.push_back(kept[i].first);
        vocab.frequencies.push_back(kept[i].second);
        vocab.index[kept[i].first] = static_cast<std::uint32_t>(i);
    }
    return vocab;
}

struct Example {
    std::span<const double> input;
    std::uint32_t positive;
};

}  // namespace

double sgns_gradients_on(const Word2VecParams& params, std::span<const double> input_vec,
                         std::uint32_t positive, std::span<const std::uint32_t> negatives,
                         std::span<double> grad_input, std::span<double> grad_outputs) {
    const std::uint32_t dim = params.dimension();
    if (input_vec.size() != dim || grad_input.size() != dim ||
        grad_outputs.size() != (1 + negatives.size()) * dim) {
        throw ContractViolation("sgns gradient buffer size mismatch");
    }

    std::fill(grad_input.begin(), grad_input.end(), 0.0);
    double loss = 0.0;

    auto accumulate = [&](std::uint32_t row_index, bool is_positive, std::span<double> grad_row) {
        const double* row = params.output_row(row_index);
        double score = 0.0;
        for (std::uint32_t d = 0; d < dim; ++d) score += row[d] * input_vec[d];
        double sig = sigmoid(score);
        // d(-ln sig(s))/ds = sig - 1 for the positive; d(-ln sig(-s))/ds = sig
        double coeff = is_positive ? sig - 1.0 : sig;
        loss += is_positive ? -std::log(sig) : -std::log(1.0 - sig);
        for (std::uint32_t d = 0; d < dim; ++d) {
            grad_row[d] = coeff * input_vec[d];
            grad_input[d] += coeff * row[d];
        }
    };

    accumulate(positive, true, grad_outputs.subspan(0, dim));
    for (std::size_t n = 0; n < negatives.size(); ++n) {
        accumulate(negatives[n], false, grad_outputs.subspan((n + 1) * dim, dim));
    }
    return loss;
}

double negative_sampling_gradients(const Word2VecParams& params, std::uint32_t center,
                                   std::uint32_t positive,
                                   std::span<const std::uint32_t> negatives,
                                   std::span<double> grad_input, std::span<double> grad_outputs) {
    std::span<const double> input_vec(params.input_row(center), params.dimension());
    return sgns_gradients_on(params, input_vec, positive, negatives, grad_input, grad_outputs);
}

namespace {

class Trainer {
public:
    Trainer(const std::vector<TokenList>& sentences, const TrainConfig& cfg)
        : cfg_(cfg), vocab_(build_train_vocab(sentences, cfg.min_count)) {
        if (vocab_.tokens.size() < 2) {
            throw TrainingError("corpus too small: fewer than two distinct trainable tokens");
        }

        encoded_.reserve(sentences.size());
        for (const auto& sentence : sentences) {
            std::vector<std::uint32_t> ids;
            ids.reserve(sentence.tokens.size());
            for (const auto& tok : sentence.tokens) {
                auto it = vocab_.index.find(tok);
                if (it != vocab_.index.end()) ids.push_back(it->second);
            }
            total_positions_ += ids.size();
            if (ids.size() >= 2) has_pair_ = true;
            if (!ids.empty()) encoded_.push_back(std::move(ids));
        }
        if (!has_pair_) {
            throw TrainingError("corpus too small: no sentence with two trainable tokens");
        }

        params_ = std::make_unique<Word2VecParams>(vocab_.tokens.size(), cfg_.dimension);
        SplitMix64 init_rng(cfg_.seed);
        for (double& v : params_->input_matrix()) {
            v = (init_rng.next_double() - 0.5) / cfg_.dimension;
        }
        sampler_ = std::make_unique<NegativeSampler>(vocab_.frequencies);
    }

    TrainResult run() {
        std::vector<EpochStats> stats;
        for (std::uint32_t epoch = 0; epoch < cfg_.epochs; ++epoch) {
            EpochStats s = cfg_.threads <= 1 ? run_epoch_single(epoch) : run_epoch_parallel(epoch);
            if (!std::isfinite(s.mean_pair_loss)) {
                throw TrainingError("training diverged: non-finite loss at epoch " +
                                    std::to_string(epoch + 1));
            }
            stats.push_back(s);
        }

        EmbeddingTable table(cfg_.dimension, TableProvenance::trained);
        for (std::size_t i = 0; i < vocab_.tokens.size(); ++i) {
            table.add(vocab_.tokens[i],
                      std::span<const double>(params_->input_row(i), cfg_.dimension));
        }
        return TrainResult{std::move(table), std::move(stats)};
    }

private:
    double learning_rate() const {
        double total = static_cast<double>(cfg_.epochs) * static_cast<double>(total_positions_) + 1.0;
        double progress = static_cast<double>(words_done_.load(std::memory_order_relaxed)) / total;
        double lr = cfg_.initial_learning_rate * (1.0 - progress);
        return std::max(lr, cfg_.min_learning_rate);
    }

    // Worker over a contiguous range of sentences; shared params without
    // locking when parallel (hogwild), exact when single-threaded.
    double process_range(std::size_t begin, std::size_t end, std::uint64_t rng_seed,
                         std::uint64_t* pair_count) {
        SplitMix64 rng(rng_seed);
        const std::uint32_t dim = cfg_.dimension;
        std::vector<double> grad_input(dim);
        std::vector<double> grad_outputs((1 + cfg_.negative_samples) * dim);
        std::vector<std::uint32_t> negatives(cfg_.negative_samples);
        std::vector<double> hidden(dim);
        std::vector<std::uint32_t> context;

        double loss_sum = 0.0;
        std::uint64_t pairs = 0;

        for (std::size_t s = begin; s < end; ++s) {
            const auto& sen = encoded_[s];
            for (std::size_t pos = 0; pos < sen.size(); ++pos) {
                double lr = learning_rate();
                std::uint32_t span =
                    1 + static_cast<std::uint32_t>(rng.below(cfg_.window));
                std::size_t lo = pos >= span ? pos - span : 0;
                std::size_t hi = std::min(sen.size() - 1, pos + span);

                if (cfg_.architecture == W2vArchitecture::skipgram) {
                    for (std::size_t c = lo; c <= hi; ++c) {
                        if (c == pos) continue;
                        std::uint32_t center = sen[pos];
                        std::uint32_t target = sen[c];
                        for (auto& n : negatives) n = sampler_->draw_negative(rng, target);
                        loss_sum += negative_sampling_gradients(*params_, center, target,
                                                                negatives, grad_input,
                                                                grad_outputs);
                        apply_updates(center, target, negatives, grad_input, grad_outputs, lr);
                        ++pairs;
                    }
                } else {
                    context.clear();
                    for (std::size_t c = lo; c <= hi; ++c) {
                        if (c != pos) context.push_back(sen[c]);
                    }
                    if (context.empty()) {
                        words_done_.fetch_add(1, std::memory_order_relaxed);
                        continue;
                    }
                    std::fill(hidden.begin(), hidden.end(), 0.0);
                    for (std::uint32_t w : context) {
                        const double* row = params_->input_row(w);
                        for (std::uint32_t d = 0; d < dim; ++d) hidden[d] += row[d];
                    }
                    for (double& h : hidden) h /= static_cast<double>(context.size());

                    std::uint32_t target = sen[pos];
                    for (auto& n : negatives) n = sampler_->draw_negative(rng, target);
                    loss_sum += sgns_gradients_on(*params_, hidden, target, negatives,
                                                  grad_input, grad_outputs);
                    apply_output_updates(target, negatives, grad_outputs, lr);
                    // the input gradient goes to every context word, undivided,
                    // matching the reference implementation
                    for (std::uint32_t w : context) {
                        double* row = params_->input_row(w);
                        for (std::uint32_t d = 0; d < dim; ++d) row[d] -= lr * grad_input[d];
                    }
                    ++pairs;
                }
                words_done_.fetch_add(1, std::memory_order_relaxed);
            }
        }
        *pair_count = pairs;
        return loss_sum;
    }

    void apply_output_updates(std::uint32_t positive, std::span<const std::uint32_t> negatives,
                              std::span<const double> grad_outputs, double lr) {
        const std::uint32_t dim = cfg_.dimension;
        double* pos_row = params_->output_row(positive);
        for (std::uint32_t d = 0; d < dim; ++d) pos_row[d] -= lr * grad_outputs[d];
        for (std::size_t n = 0; n < negatives.size(); ++n) {
            double* neg_row = params_->output_row(negatives[n]);
            const double* g = grad_outputs.data() + (n + 1) * dim;
            for (std::uint32_t d = 0; d < dim; ++d) neg_row[d] -= lr * g[d];
        }
    }

    void apply_updates(std::uint32_t center, std::uint32_t positive,
                       std::span<const std::uint32_t> negatives,
                       std::span<const double> grad_input, std::span<const double> grad_outputs,
                       double lr) {
        apply_output_updates(positive, negatives, grad_outputs, lr);
        double* row = params_->input_row(center);
        for (std::uint32_t d = 0; d < cfg_.dimension; ++d) row[d] -= lr * grad_input[d];
    }

    EpochStats run_epoch_single(std::uint32_t epoch) {
        std::uint64_t pairs = 0;
        double loss = process_range(0, encoded_.size(), mix_seed(epoch, 0), &pairs);
        return make_stats(loss, pairs);
    }

    EpochStats run_epoch_parallel(std::uint32_t epoch) {
        unsigned workers = std::min<unsigned>(cfg_.threads,
                                              static_cast<unsigned>(encoded_.size()));
        std::vector<std::thread> threads;
        std::vector<double> losses(workers, 0.0);
        std::vector<std::uint64_t> pair_counts(workers, 0);
        std::size_t chunk = (encoded_.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(encoded_.size(), begin + chunk);
            threads.emplace_back([this, begin, end, w, epoch, &losses, &pair_counts] {
                losses[w] = process_range(begin, end, mix_seed(epoch, w + 1), &pair_counts[w]);
            });
        }
        for (auto& t : threads) t.join();
        double loss = 0.0;
        std::uint64_t pairs = 0;
        for (unsigned w = 0; w < workers; ++w) {
            loss += losses[w];
            pairs += pair_counts[w];
        }
        return make_stats(loss, pairs);
    }

    std::uint64_t mix_seed(std::uint32_t epoch, unsigned worker) const {
        return cfg_.seed + 0x9E3779B9ull * (epoch + 1) + 0x85EBCA6Bull * worker;
    }

    static EpochStats make_stats(double loss, std::uint64_t pairs) {
        EpochStats s;
        s.pairs = pairs;
        s.mean_pair_loss = pairs ? loss / static_cast<double>(pairs) : 0.0;
        return s;
    }

    TrainConfig cfg_;
    TrainVocab vocab_;
    std::vector<std::vector<std::uint32_t>> encoded_;
    std::uint64_t total_positions_ = 0;
    bool has_pair_ = false;
    std::unique_ptr<Word2VecParams> params_;
    std::unique_ptr<NegativeSampler> sampler_;
    std::atomic<std::uint64_t> words_done_{0};
};

}  // namespace

TrainResult train_word2vec(const std::vector<TokenList>& sentences, const TrainConfig& cfg) {
    if (cfg.dimension == 0 || cfg.window == 0 || cfg.negative_samples == 0 || cfg.epochs == 0) {
        throw ConfigError("word2vec dimension, window, negative samples and epochs must be >= 1");
    }
    return Trainer(sentences, cfg).run();
}

}  // namespace corpusranker
