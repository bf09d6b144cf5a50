#include "cogmap/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <json.hpp>

#include "cogmap/error.hpp"
#include "cogmap/gdv.hpp"
#include "cogmap/mds.hpp"
#include "cogmap/successor.hpp"
#include "cogmap/svg.hpp"
#include "cogmap/text_io.hpp"
#include "cogmap/training_set.hpp"

namespace fs = std::filesystem;

namespace cogmap {

void PipelineConfig::validate() const {
  if (embeddings_path.empty()) throw ValidationError("config: embeddings path is required");
  if (lexicon_path.empty()) throw ValidationError("config: lexicon path is required");
  if (output_dir.empty()) throw ValidationError("config: output directory is required");
  if (gammas.empty()) throw ValidationError("config: gammas must be nonempty");
  for (double g : gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw ValidationError("config: gamma " + format_double(g) + " outside [0, 1]");
  if (horizon < 0) throw ValidationError("config: horizon must be non-negative");
}

std::string PipelineConfig::to_text() const {
  std::string gamma_list;
  for (std::size_t i = 0; i < gammas.size(); ++i) gamma_list += (i ? "," : "") + format_double(gammas[i]);
  std::string out;
  out += "embeddings=" + embeddings_path.string() + "\n";
  out += "lexicon=" + lexicon_path.string() + "\n";
  out += "output_dir=" + output_dir.string() + "\n";
  out += "gammas=" + gamma_list + "\n";
  out += "horizon=" + std::to_string(horizon) + "\n";
  out += std::string("zero_diagonal=") + (zero_diagonal ? "true" : "false") + "\n";
  out += std::string("smacof=") + (smacof ? "true" : "false") + "\n";
  out += "hidden_dim=" + std::to_string(mlp.hidden_dim) + "\n";
  out += "dropout=" + format_double(mlp.dropout_rate) + "\n";
  out += "learning_rate=" + format_double(mlp.learning_rate) + "\n";
  out += "optimizer=" + std::string(to_string(mlp.optimizer)) + "\n";
  out += "momentum=" + format_double(mlp.momentum) + "\n";
  out += "epochs=" + std::to_string(mlp.epochs) + "\n";
  out += "batch_size=" + std::to_string(mlp.batch_size) + "\n";
  out += "seed=" + std::to_string(seed) + "\n";
  return out;
}

namespace {

bool parse_bool(std::string_view v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("config: '" + key + "' expects true/false");
}

double require_double(std::string_view v, const std::string& key) {
  auto x = parse_double(v);
  if (!x) throw ValidationError("config: '" + key + "' expects a number, got '" + std::string(v) + "'");
  return *x;
}

long long require_integer(std::string_view v, const std::string& key) {
  auto x = parse_integer(v);
  if (!x) throw ValidationError("config: '" + key + "' expects an integer, got '" + std::string(v) + "'");
  return *x;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void apply_config_text(PipelineConfig& config, std::string_view text, const fs::path& base_dir) {
  auto resolve = [&](std::string_view v) {
    fs::path p{std::string(v)};
    return (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
  };
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));

    if (key == "embeddings") {
      config.embeddings_path = resolve(value);
    } else if (key == "lexicon") {
      config.lexicon_path = resolve(value);
    } else if (key == "output_dir") {
      config.output_dir = resolve(value);
    } else if (key == "gammas") {
      config.gammas.clear();
      for (auto g : split(value, ',')) config.gammas.push_back(require_double(trim(g), key));
    } else if (key == "horizon") {
      config.horizon = static_cast<int>(require_integer(value, key));
    } else if (key == "zero_diagonal") {
      config.zero_diagonal = parse_bool(value, key);
    } else if (key == "smacof") {
      config.smacof = parse_bool(value, key);
    } else if (key == "hidden_dim") {
      const auto v = require_integer(value, key);
      if (v <= 0) throw ValidationError("config: hidden_dim must be positive");
      config.mlp.hidden_dim = static_cast<std::size_t>(v);
    } else if (key == "dropout") {
      config.mlp.dropout_rate = require_double(value, key);
    } else if (key == "learning_rate") {
      config.mlp.learning_rate = require_double(value, key);
    } else if (key == "optimizer") {
      config.mlp.optimizer = parse_optimizer(value);
    } else if (key == "momentum") {
      config.mlp.momentum = require_double(value, key);
    } else if (key == "epochs") {
      config.mlp.epochs = static_cast<int>(require_integer(value, key));
    } else if (key == "batch_size") {
      const auto v = require_integer(value, key);
      if (v <= 0) throw ValidationError("config: batch_size must be positive");
      config.mlp.batch_size = static_cast<std::size_t>(v);
    } else if (key == "seed") {
      const auto v = require_integer(value, key);
      if (v < 0) throw ValidationError("config: seed must be non-negative");
      config.seed = static_cast<std::uint64_t>(v);
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

PipelineConfig load_config(const fs::path& path) {
  PipelineConfig config;
  apply_config_text(config, read_file(path), path.parent_path());
  return config;
}

std::string config_hash(const PipelineConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.to_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LabeledTable parse_labeled_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty()) throw ValidationError("labeled csv: empty input");
  auto header = split(trim(lines[0]), ',');
  if (header.size() < 4 || trim(header[0]) != "word" || trim(header[1]) != "category" || trim(header[2]) != "split")
    throw ValidationError("labeled csv line 1: header must start with 'word,category,split' and name numeric columns");
  LabeledTable t;
  for (std::size_t c = 3; c < header.size(); ++c) t.columns.emplace_back(trim(header[c]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    const std::string where = "labeled csv line " + std::to_string(i + 1) + ": ";
    auto cells = split(line, ',');
    if (cells.size() != header.size()) throw ValidationError(where + "wrong column count");
    t.words.emplace_back(trim(cells[0]));
    t.categories.emplace_back(trim(cells[1]));
    t.splits.emplace_back(trim(cells[2]));
    std::vector<double> row;
    for (std::size_t c = 3; c < cells.size(); ++c) {
      auto v = parse_double(trim(cells[c]));
      if (!v) throw ValidationError(where + "bad number in column '" + t.columns[c - 3] + "'");
      row.push_back(*v);
    }
    t.values.push_back(std::move(row));
  }
  return t;
}

std::string format_labeled_csv(const LabeledTable& t) {
  std::string out = "word,category,split";
  for (const auto& c : t.columns) out += "," + c;
  out += '\n';
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    out += t.words[i] + "," + t.categories[i] + "," + t.splits[i];
    for (double v : t.values[i]) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

namespace {

// Removes everything written so far unless disarmed.
class OutputGuard {
 public:
  explicit OutputGuard(fs::path dir) : dir_(std::move(dir)) {
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
  }
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
  }
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;

  fs::path write(const std::string& name, std::string_view contents) {
    const fs::path p = dir_ / name;
    files_.push_back(p);
    write_file(p, contents);
    return p;
  }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
  bool created_dir_ = false;
  bool committed_ = false;
};

template <typename F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  } catch (const DivergenceError& e) {
    throw DivergenceError(name + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

LabeledPointSet subset(const LabeledTable& t, const std::vector<std::vector<double>>& points,
                       std::string_view split_filter) {
  LabeledPointSet s;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    if (!split_filter.empty() && t.splits[i] != split_filter) continue;
    s.points.push_back(points[i]);
    s.labels.push_back(t.categories[i]);
  }
  return s;
}

nlohmann::json report_json(const GdvReport& r) { return nlohmann::json::parse(gdv_report_to_json(r)); }

}  // namespace

RunManifest run_pipeline(const PipelineConfig& config) {
  stage("config", [&] {
    config.validate();
    return 0;
  });

  RunManifest manifest;
  manifest.started_at = utc_now();
  manifest.config_hash = config_hash(config);
  manifest.tool_version = COGMAP_VERSION;

  OutputGuard out = stage("output", [&] { return OutputGuard(config.output_dir); });

  const auto table = stage("load embeddings", [&] { return load_embeddings(config.embeddings_path); });
  const auto lex = stage("load lexicon", [&] { return load_lexicon(config.lexicon_path); });
  const auto transition = stage("transition matrix", [&] {
    return build_transition_matrix(table, lex, TransitionOptions{config.zero_diagonal});
  });
  manifest.transition_csv = out.write("transition.csv", matrix_to_csv(transition.values));
  manifest.transition_json = out.write("transition.json", transition_to_json(transition));

  // Every lexicon word, training first, in lexicon order.
  LabeledTable labels;
  for (Split split : {Split::Train, Split::Validation}) {
    for (const auto& e : lex.entries(split)) {
      labels.words.push_back(e.word);
      labels.categories.push_back(e.category);
      labels.splits.emplace_back(to_string(split));
    }
  }

  for (std::size_t gi = 0; gi < config.gammas.size(); ++gi) {
    const double gamma = config.gammas[gi];
    const std::string tag = gamma_tag(gamma);
    const std::string leg = "gamma " + tag + ": ";
    GammaArtifacts art;
    art.gamma = gamma;
    art.seed = config.seed + gi;

    const auto sr = stage(leg + "successor matrix", [&] { return successor_matrix(transition, gamma, config.horizon); });
    art.files["sr"] = out.write("sr_gamma_" + tag + ".csv", matrix_to_csv(sr.values));
    art.files["srJson"] = out.write("sr_gamma_" + tag + ".json", successor_to_json(sr));

    const auto examples = stage(leg + "examples", [&] { return build_examples(table, lex, sr, Split::Train); });
    MlpConfig mlp = config.mlp;
    mlp.input_dim = table.dimension();
    mlp.output_dim = lex.state_count();
    mlp.seed = art.seed;
    const auto trained = stage(leg + "training", [&] { return train(mlp, examples); });
    art.first_epoch_loss = trained.report.loss_per_epoch.front();
    art.last_epoch_loss = trained.report.loss_per_epoch.back();
    art.files["model"] = out.write("model_gamma_" + tag + ".json", model_to_json(trained.model));
    {
      nlohmann::json j;
      j["seed"] = trained.report.seed;
      j["lossPerEpoch"] = trained.report.loss_per_epoch;
      j["finalTrainLoss"] = trained.report.final_train_loss;
      art.files["trainReport"] = out.write("train_report_gamma_" + tag + ".json", j.dump(1) + "\n");
    }

    LabeledTable predictions = labels;
    predictions.columns = lex.training_words();
    predictions.values = stage(leg + "prediction", [&] { return predict_all(trained.model, table, labels.words); });
    art.files["predictions"] = out.write("predictions_gamma_" + tag + ".csv", format_labeled_csv(predictions));

    const auto projection = stage(leg + "projection", [&] {
      const auto d = pairwise_euclidean(predictions.values);
      auto p = classical_mds(d, 2);
      if (config.smacof) p = smacof_refine(d, p);
      return p;
    });
    LabeledTable projected = labels;
    projected.columns = {"x", "y"};
    projected.values = projection.coordinates;
    art.files["projection"] = out.write("projection_gamma_" + tag + ".csv", format_labeled_csv(projected));

    std::vector<MapPoint> map_points;
    for (std::size_t i = 0; i < labels.words.size(); ++i)
      map_points.push_back({projection.coordinates[i][0], projection.coordinates[i][1], labels.words[i],
                            labels.categories[i], labels.splits[i] == "validation"});
    art.files["svg"] = out.write("map_gamma_" + tag + ".svg",
                                 stage(leg + "render", [&] {
                                   return render_svg(map_points, lex.categories, "gamma = " + tag);
                                 }));

    nlohmann::json gdv_json;
    gdv_json["gamma"] = gamma;
    stage(leg + "gdv", [&] {
      const GdvReport all = gdv(subset(labels, predictions.values, ""));
      const GdvReport tr = gdv(subset(labels, predictions.values, "train"));
      const GdvReport va = gdv(subset(labels, predictions.values, "validation"));
      const GdvReport proj = gdv(subset(labels, projection.coordinates, ""));
      art.gdv_all = all.gdv;
      art.gdv_train = tr.gdv;
      art.gdv_validation = va.gdv;
      art.gdv_projected_all = proj.gdv;
      gdv_json["predictionSpace"] = {{"all", report_json(all)}, {"train", report_json(tr)},
                                     {"validation", report_json(va)}};
      gdv_json["projectionSpace"] = {
          {"all", report_json(proj)},
          {"train", report_json(gdv(subset(labels, projection.coordinates, "train")))},
          {"validation", report_json(gdv(subset(labels, projection.coordinates, "validation")))}};
      return 0;
    });
    art.files["gdv"] = out.write("gdv_gamma_" + tag + ".json", gdv_json.dump(1) + "\n");
    manifest.runs.push_back(std::move(art));
  }

  manifest.finished_at = utc_now();
  nlohmann::json j;
  j["toolVersion"] = manifest.tool_version;
  j["configHash"] = manifest.config_hash;
  j["startedAt"] = manifest.started_at;
  j["finishedAt"] = manifest.finished_at;
  j["config"] = config.to_text();
  j["transition"] = {{"csv", manifest.transition_csv.string()}, {"json", manifest.transition_json.string()}};
  for (const auto& r : manifest.runs) {
    nlohmann::json jr;
    jr["gamma"] = r.gamma;
    jr["seed"] = r.seed;
    for (const auto& [role, path] : r.files) jr["files"][role] = path.string();
    jr["gdv"] = {{"all", r.gdv_all}, {"train", r.gdv_train}, {"validation", r.gdv_validation},
                 {"projectedAll", r.gdv_projected_all}};
    jr["firstEpochLoss"] = r.first_epoch_loss;
    jr["lastEpochLoss"] = r.last_epoch_loss;
    j["runs"].push_back(jr);
  }
  manifest.manifest_path = out.write("manifest.json", j.dump(1) + "\n");
  out.commit();
  return manifest;
}

}  // namespace cogmap
