#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corpusranker/embedding.hpp"
#include "corpusranker/errors.hpp"
#include "corpusranker/preprocess.hpp"

namespace corpusranker {

enum class W2vArchitecture { cbow, skipgram };

const char* architecture_name(W2vArchitecture a);
W2vArchitecture architecture_from_name(const std::string& name);

struct TrainConfig {
    std::uint32_t dimension = 100;
    W2vArchitecture architecture = W2vArchitecture::skipgram;
    std::uint32_t window = 5;
    std::uint32_t negative_samples = 5;
    std::uint32_t epochs = 5;
    double initial_learning_rate = 0.025;
    double min_learning_rate = 1e-4;
    std::uint32_t min_count = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;  // >1 trades reproducibility for speed (hogwild)
};

class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& message) : Error(ErrorKind::config, message) {}
};

// Input and output parameter matrices of the shallow SGNS network. Exposed so
// tests can perturb single coordinates for finite-difference checks.
class Word2VecParams {
public:
    Word2VecParams(std::size_t vocab_size, std::uint32_t dimension)
        : dimension_(dimension),
          input_(vocab_size * dimension, 0.0),
          output_(vocab_size * dimension, 0.0) {}

    std::uint32_t dimension() const { return dimension_; }
    std::size_t vocab_size() const { return input_.size() / dimension_; }

    double* input_row(std::size_t i) { return input_.data() + i * dimension_; }
    const double* input_row(std::size_t i) const { return input_.data() + i * dimension_; }
    double* output_row(std::size_t i) { return output_.data() + i * dimension_; }
    const double* output_row(std::size_t i) const { return output_.data() + i * dimension_; }

    std::vector<double>& input_matrix() { return input_; }
    std::vector<double>& output_matrix() { return output_; }

private:
    std::uint32_t dimension_;
    std::vector<double> input_;
    std::vector<double> output_;
};

// Loss of one (input vector, positive, negatives) example:
//   -ln sigmoid(u_pos . h) - sum_n ln sigmoid(-u_n . h)
// grad_input receives dL/dh (length = dimension); grad_outputs receives
// dL/du for the positive row followed by each negative row
// ((1 + negatives.size()) * dimension values). Returns the loss.
double sgns_gradients_on(const Word2VecParams& params, std::span<const double> input_vec,
                         std::uint32_t positive, std::span<const std::uint32_t> negatives,
                         std::span<double> grad_input, std::span<double> grad_outputs);

// Same, with the input vector taken from the center token's input row.
double negative_sampling_gradients(const Word2VecParams& params, std::uint32_t center,
                                   std::uint32_t positive,
                                   std::span<const std::uint32_t> negatives,
                                   std::span<double> grad_input, std::span<double> grad_outputs);

struct EpochStats {
    double mean_pair_loss = 0.0;
    std::uint64_t pairs = 0;
};

struct TrainResult {
    EmbeddingTable table;
    std::vector<EpochStats> epochs;
};

// Trains SGNS (skip-gram or CBOW) over the sentences. Deterministic and
// bit-reproducible for a fixed seed with threads == 1. Raises TrainingError
// when no training pair exists after min_count filtering, or when the epoch
// loss turns non-finite.
TrainResult train_word2vec(const std::vector<TokenList>& sentences, const TrainConfig& cfg);

}  // namespace corpusranker
