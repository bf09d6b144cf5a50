#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/dataset.hpp"
#include "cogmap/matrix.hpp"
#include "cogmap/training_set.hpp"

namespace cogmap {

enum class Optimizer { SgdMomentum, Adam };

std::string_view to_string(Optimizer optimizer);
// Accepts "sgd" / "adam". Throws ValidationError otherwise.
Optimizer parse_optimizer(std::string_view name);

struct MlpConfig {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 128;
  std::size_t output_dim = 0;
  double dropout_rate = 0.8;  // probability of zeroing each input component
  double learning_rate = 1e-5;
  Optimizer optimizer = Optimizer::SgdMomentum;
  double momentum = 0.9;      // SGD only
  double adam_beta1 = 0.9;    // Adam only
  double adam_beta2 = 0.999;  // Adam only
  double adam_epsilon = 1e-7;  // Adam only
  int epochs = 500;
  std::size_t batch_size = 20;
  std::uint64_t seed = 0;

  // Throws ValidationError on out-of-range hyperparameters.
  void validate() const;
};

// embedding -> dropout -> dense+ReLU -> dense -> softmax over states.
struct MlpModel {
  MlpConfig config;
  Matrix w1;  // hidden x input
  std::vector<double> b1;
  Matrix w2;  // output x hidden
  std::vector<double> b2;

  bool operator==(const MlpModel& other) const {
    return w1 == other.w1 && b1 == other.b1 && w2 == other.w2 && b2 == other.b2;
  }
};

// Glorot-uniform weights from Rng(config.seed), zero biases.
MlpModel initialize_model(const MlpConfig& config);

enum class ForwardMode { Train, Inference };

// In Train mode, `mask` (0/1 per input component, required) selects survivors,
// which are scaled by 1/(1 - dropout_rate). Inference mode ignores the mask.
std::vector<double> forward(const MlpModel& model, std::span<const double> input, ForwardMode mode,
                            std::span<const double> mask = {});

// -sum_j target_j * ln(max(prediction_j, 1e-12)).
double cross_entropy(std::span<const double> prediction, std::span<const double> target);

struct Gradients {
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;

  explicit Gradients(const MlpConfig& c)
      : w1(c.hidden_dim, c.input_dim), b1(c.hidden_dim), w2(c.output_dim, c.hidden_dim), b2(c.output_dim) {}
};

// Adds d(loss)/d(params) of one example to `grads` and returns the loss.
// `mask` as in forward(); empty means inference (no dropout).
double accumulate_gradients(const MlpModel& model, std::span<const double> input, std::span<const double> target,
                            std::span<const double> mask, Gradients& grads);

struct TrainReport {
  std::vector<double> loss_per_epoch;  // mean training loss, with dropout, per epoch
  double final_train_loss = 0.0;       // inference-mode mean loss after the last epoch
  std::uint64_t seed = 0;
};

struct TrainResult {
  MlpModel model;
  TrainReport report;
};

// Mini-batch SGD with momentum (or Adam) on mean batch cross-entropy. Deterministic in
// (config, examples). Throws DivergenceError naming the epoch on NaN/Inf.
TrainResult train(const MlpConfig& config, const ExampleSet& examples);

// Max relative error between backprop and central finite differences over
// every parameter, dropout disabled:
// |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
double gradient_check(const MlpModel& model, std::span<const double> input, std::span<const double> target,
                      double epsilon = 1e-5);
// Same check on the freshly initialized model for `config`.
double gradient_check(const MlpConfig& config, std::span<const double> input, std::span<const double> target,
                      double epsilon = 1e-5);

// Inference-mode forward for each word, order preserved.
std::vector<std::vector<double>> predict_all(const MlpModel& model, const EmbeddingTable& table,
                                             std::span<const std::string> words);

std::string model_to_json(const MlpModel& model);
MlpModel model_from_json(std::string_view text);

}  // namespace cogmap
