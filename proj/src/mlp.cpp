#include "cogmap/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "cogmap/error.hpp"
#include "cogmap/rng.hpp"

namespace cogmap {

std::string_view to_string(Optimizer optimizer) {
  return optimizer == Optimizer::Adam ? "adam" : "sgd";
}

Optimizer parse_optimizer(std::string_view name) {
  if (name == "sgd") return Optimizer::SgdMomentum;
  if (name == "adam") return Optimizer::Adam;
  throw ValidationError("unknown optimizer '" + std::string(name) + "' (expected sgd or adam)");
}

void MlpConfig::validate() const {
  if (input_dim == 0) throw ValidationError("mlp: input dimension must be positive");
  if (hidden_dim == 0) throw ValidationError("mlp: hidden dimension must be positive");
  if (output_dim == 0) throw ValidationError("mlp: output dimension must be positive");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ValidationError("mlp: dropout rate must lie in [0, 1)");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw ValidationError("mlp: learning rate must be finite and non-negative");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ValidationError("mlp: momentum must lie in [0, 1)");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw ValidationError("mlp: Adam betas must lie in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw ValidationError("mlp: Adam epsilon must be positive");
  if (epochs <= 0) throw ValidationError("mlp: epochs must be positive");
  if (batch_size == 0) throw ValidationError("mlp: batch size must be positive");
}

MlpModel initialize_model(const MlpConfig& config) {
  config.validate();
  MlpModel m{config,
             Matrix(config.hidden_dim, config.input_dim),
             std::vector<double>(config.hidden_dim, 0.0),
             Matrix(config.output_dim, config.hidden_dim),
             std::vector<double>(config.output_dim, 0.0)};
  Rng rng(config.seed);
  auto glorot = [&rng](Matrix& w) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (double& v : w.data()) v = rng.uniform(-limit, limit);
  };
  glorot(m.w1);
  glorot(m.w2);
  return m;
}

namespace {

struct Activations {
  std::vector<double> input;   // after dropout
  std::vector<double> hidden;  // post-ReLU
  std::vector<double> output;  // softmax
};

void softmax_inplace(std::vector<double>& z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

Activations run_forward(const MlpModel& model, std::span<const double> input, std::span<const double> mask) {
  const auto& c = model.config;
  if (input.size() != c.input_dim)
    throw ValidationError("mlp: input has " + std::to_string(input.size()) + " components, expected " +
                          std::to_string(c.input_dim));
  Activations a;
  a.input.assign(input.begin(), input.end());
  if (!mask.empty()) {
    if (mask.size() != c.input_dim) throw ValidationError("mlp: dropout mask size mismatch");
    const double scale = 1.0 / (1.0 - c.dropout_rate);
    for (std::size_t i = 0; i < c.input_dim; ++i) a.input[i] *= mask[i] * scale;
  }
  a.hidden.resize(c.hidden_dim);
  for (std::size_t h = 0; h < c.hidden_dim; ++h)
    a.hidden[h] = std::max(0.0, dot(model.w1.row(h), a.input) + model.b1[h]);
  a.output.resize(c.output_dim);
  for (std::size_t o = 0; o < c.output_dim; ++o) a.output[o] = dot(model.w2.row(o), a.hidden) + model.b2[o];
  softmax_inplace(a.output);
  return a;
}

}  // namespace

std::vector<double> forward(const MlpModel& model, std::span<const double> input, ForwardMode mode,
                            std::span<const double> mask) {
  if (mode == ForwardMode::Train && mask.empty()) throw ValidationError("mlp: train-mode forward needs a mask");
  return run_forward(model, input, mode == ForwardMode::Train ? mask : std::span<const double>{}).output;
}

double cross_entropy(std::span<const double> prediction, std::span<const double> target) {
  double loss = 0.0;
  for (std::size_t j = 0; j < prediction.size(); ++j) {
    if (target[j] != 0.0) loss -= target[j] * std::log(std::max(prediction[j], 1e-12));
  }
  return loss;
}

double accumulate_gradients(const MlpModel& model, std::span<const double> input, std::span<const double> target,
                            std::span<const double> mask, Gradients& grads) {
  const auto& c = model.config;
  if (target.size() != c.output_dim) throw ValidationError("mlp: target size mismatch");
  const Activations a = run_forward(model, input, mask);

  // Softmax + cross-entropy: dL/dz = p - t (targets sum to 1).
  std::vector<double> dz(c.output_dim);
  for (std::size_t o = 0; o < c.output_dim; ++o) dz[o] = a.output[o] - target[o];

  std::vector<double> dh(c.hidden_dim, 0.0);
  for (std::size_t o = 0; o < c.output_dim; ++o) {
    grads.b2[o] += dz[o];
    auto gw = grads.w2.row(o);
    auto w = model.w2.row(o);
    for (std::size_t h = 0; h < c.hidden_dim; ++h) {
      gw[h] += dz[o] * a.hidden[h];
      dh[h] += dz[o] * w[h];
    }
  }
  for (std::size_t h = 0; h < c.hidden_dim; ++h) {
    if (a.hidden[h] <= 0.0) continue;
    grads.b1[h] += dh[h];
    auto gw = grads.w1.row(h);
    for (std::size_t i = 0; i < c.input_dim; ++i) gw[i] += dh[h] * a.input[i];
  }
  return cross_entropy(a.output, target);
}

namespace {

bool all_finite(const MlpModel& m) {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return ok(m.w1.data()) && ok(m.b1) && ok(m.w2.data()) && ok(m.b2);
}

// First/second moment buffers, one Gradients-shaped set each.
struct OptimizerState {
  Gradients first;
  Gradients second;
  long long steps = 0;
  explicit OptimizerState(const MlpConfig& c) : first(c), second(c) {}
};

void momentum_step(std::vector<double>& param, std::vector<double>& velocity, const std::vector<double>& grad,
                   double scale, double lr, double mu) {
  for (std::size_t i = 0; i < param.size(); ++i) {
    velocity[i] = mu * velocity[i] - lr * grad[i] * scale;
    param[i] += velocity[i];
  }
}

void adam_step(std::vector<double>& param, std::vector<double>& m, std::vector<double>& v,
               const std::vector<double>& grad, double scale, const MlpConfig& c, long long t) {
  const double b1 = c.adam_beta1;
  const double b2 = c.adam_beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(t));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(t));
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i] * scale;
    m[i] = b1 * m[i] + (1.0 - b1) * g;
    v[i] = b2 * v[i] + (1.0 - b2) * g * g;
    param[i] -= c.learning_rate * (m[i] / corr1) / (std::sqrt(v[i] / corr2) + c.adam_epsilon);
  }
}

void apply_step(MlpModel& model, OptimizerState& state, const Gradients& grads, double scale) {
  const auto& c = model.config;
  ++state.steps;
  if (c.optimizer == Optimizer::Adam) {
    adam_step(model.w1.data(), state.first.w1.data(), state.second.w1.data(), grads.w1.data(), scale, c,
              state.steps);
    adam_step(model.b1, state.first.b1, state.second.b1, grads.b1, scale, c, state.steps);
    adam_step(model.w2.data(), state.first.w2.data(), state.second.w2.data(), grads.w2.data(), scale, c,
              state.steps);
    adam_step(model.b2, state.first.b2, state.second.b2, grads.b2, scale, c, state.steps);
  } else {
    const double lr = c.learning_rate;
    const double mu = c.momentum;
    momentum_step(model.w1.data(), state.first.w1.data(), grads.w1.data(), scale, lr, mu);
    momentum_step(model.b1, state.first.b1, grads.b1, scale, lr, mu);
    momentum_step(model.w2.data(), state.first.w2.data(), grads.w2.data(), scale, lr, mu);
    momentum_step(model.b2, state.first.b2, grads.b2, scale, lr, mu);
  }
}

}  // namespace

TrainResult train(const MlpConfig& config, const ExampleSet& examples) {
  config.validate();
  if (examples.size() == 0) throw ValidationError("train: example set is empty");
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples.inputs[i].size() != config.input_dim)
      throw ValidationError("train: input dimension mismatch for '" + examples.words[i] + "'");
    if (examples.targets[i].size() != config.output_dim)
      throw ValidationError("train: target dimension mismatch for '" + examples.words[i] + "'");
  }

  TrainResult result{initialize_model(config), {}};
  result.report.seed = config.seed;
  MlpModel& model = result.model;

  // Stream separate from initialization so that init stays reproducible on its own.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  OptimizerState state(config);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mask(config.input_dim);
  const double keep = 1.0 - config.dropout_rate;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      Gradients grads(config);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t idx = order[k];
        for (double& m : mask) m = rng.bernoulli(keep) ? 1.0 : 0.0;
        epoch_loss += accumulate_gradients(model, examples.inputs[idx], examples.targets[idx], mask, grads);
      }
      apply_step(model, state, grads, 1.0 / static_cast<double>(end - start));
    }
    epoch_loss /= static_cast<double>(examples.size());
    if (!std::isfinite(epoch_loss) || !all_finite(model))
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1));
    result.report.loss_per_epoch.push_back(epoch_loss);
  }

  double final_loss = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i)
    final_loss += cross_entropy(forward(model, examples.inputs[i], ForwardMode::Inference), examples.targets[i]);
  result.report.final_train_loss = final_loss / static_cast<double>(examples.size());
  return result;
}

double gradient_check(const MlpModel& model, std::span<const double> input, std::span<const double> target,
                      double epsilon) {
  Gradients analytic(model.config);
  accumulate_gradients(model, input, target, {}, analytic);

  MlpModel probe = model;
  auto loss_at = [&] { return cross_entropy(forward(probe, input, ForwardMode::Inference), target); };
  double worst = 0.0;
  auto check = [&](std::vector<double>& params, const std::vector<double>& grads) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double saved = params[i];
      params[i] = saved + epsilon;
      const double up = loss_at();
      params[i] = saved - epsilon;
      const double down = loss_at();
      params[i] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double err = std::abs(grads[i] - numeric) / std::max(1e-8, std::abs(grads[i]) + std::abs(numeric));
      worst = std::max(worst, err);
    }
  };
  check(probe.w1.data(), analytic.w1.data());
  check(probe.b1, analytic.b1);
  check(probe.w2.data(), analytic.w2.data());
  check(probe.b2, analytic.b2);
  return worst;
}

double gradient_check(const MlpConfig& config, std::span<const double> input, std::span<const double> target,
                      double epsilon) {
  return gradient_check(initialize_model(config), input, target, epsilon);
}

std::vector<std::vector<double>> predict_all(const MlpModel& model, const EmbeddingTable& table,
                                             std::span<const std::string> words) {
  std::vector<std::vector<double>> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(forward(model, table.at(w), ForwardMode::Inference));
  return out;
}

namespace {

nlohmann::json rows_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

Matrix rows_from(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (j.size() != rows) throw ValidationError("checkpoint: matrix row count mismatch");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw ValidationError("checkpoint: matrix column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

std::string model_to_json(const MlpModel& model) {
  const auto& c = model.config;
  nlohmann::json j;
  j["config"] = {{"inputDim", c.input_dim},       {"hiddenDim", c.hidden_dim}, {"outputDim", c.output_dim},
                 {"dropoutRate", c.dropout_rate}, {"learningRate", c.learning_rate},
                 {"optimizer", to_string(c.optimizer)},
                 {"momentum", c.momentum},        {"adamBeta1", c.adam_beta1}, {"adamBeta2", c.adam_beta2},
                 {"adamEpsilon", c.adam_epsilon}, {"epochs", c.epochs},        {"batchSize", c.batch_size},
                 {"seed", c.seed}};
  j["seed"] = c.seed;
  j["w1"] = rows_json(model.w1);
  j["b1"] = model.b1;
  j["w2"] = rows_json(model.w2);
  j["b2"] = model.b2;
  return j.dump() + "\n";
}

MlpModel model_from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    const auto& jc = j.at("config");
    MlpConfig c;
    c.input_dim = jc.at("inputDim").get<std::size_t>();
    c.hidden_dim = jc.at("hiddenDim").get<std::size_t>();
    c.output_dim = jc.at("outputDim").get<std::size_t>();
    c.dropout_rate = jc.at("dropoutRate").get<double>();
    c.learning_rate = jc.at("learningRate").get<double>();
    c.optimizer = parse_optimizer(jc.at("optimizer").get<std::string>());
    c.momentum = jc.at("momentum").get<double>();
    c.adam_beta1 = jc.at("adamBeta1").get<double>();
    c.adam_beta2 = jc.at("adamBeta2").get<double>();
    c.adam_epsilon = jc.at("adamEpsilon").get<double>();
    c.epochs = jc.at("epochs").get<int>();
    c.batch_size = jc.at("batchSize").get<std::size_t>();
    c.seed = jc.at("seed").get<std::uint64_t>();
    c.validate();
    MlpModel m{c, rows_from(j.at("w1"), c.hidden_dim, c.input_dim), j.at("b1").get<std::vector<double>>(),
               rows_from(j.at("w2"), c.output_dim, c.hidden_dim), j.at("b2").get<std::vector<double>>()};
    if (m.b1.size() != c.hidden_dim || m.b2.size() != c.output_dim)
      throw ValidationError("checkpoint: bias length mismatch");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace cogmap
