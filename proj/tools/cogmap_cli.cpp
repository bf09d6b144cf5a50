// cogmap: command-line driver for building, training, projecting and scoring
// successor-representation maps over word embeddings.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "cogmap/error.hpp"
#include "cogmap/gdv.hpp"
#include "cogmap/mds.hpp"
#include "cogmap/pipeline.hpp"
#include "cogmap/successor.hpp"
#include "cogmap/svg.hpp"
#include "cogmap/text_io.hpp"
#include "cogmap/training_set.hpp"

namespace fs = std::filesystem;
using namespace cogmap;

namespace {

// Options shared by every subcommand; unset values fall back to --config.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string embeddings;
  std::string lexicon;
  std::string output_dir;
  std::vector<double> gammas;
  std::optional<int> horizon;
  bool zero_diagonal = false;
  bool smacof = false;
  std::optional<std::size_t> hidden;
  std::optional<double> dropout;
  std::optional<double> learning_rate;
  std::optional<double> momentum;
  std::string optimizer;
  std::optional<int> epochs;
  std::optional<std::size_t> batch_size;

  PipelineConfig resolve() const {
    PipelineConfig c;
    if (!config.empty()) c = load_config(config);
    if (seed) c.seed = *seed;
    if (!embeddings.empty()) c.embeddings_path = embeddings;
    if (!lexicon.empty()) c.lexicon_path = lexicon;
    if (!output_dir.empty()) c.output_dir = output_dir;
    if (c.output_dir.empty()) {
      if (const char* env = std::getenv("COGMAP_OUTPUT_DIR")) c.output_dir = env;
    }
    if (!gammas.empty()) c.gammas = gammas;
    if (horizon) c.horizon = *horizon;
    if (zero_diagonal) c.zero_diagonal = true;
    if (smacof) c.smacof = true;
    if (hidden) c.mlp.hidden_dim = *hidden;
    if (dropout) c.mlp.dropout_rate = *dropout;
    if (learning_rate) c.mlp.learning_rate = *learning_rate;
    if (momentum) c.mlp.momentum = *momentum;
    if (!optimizer.empty()) c.mlp.optimizer = parse_optimizer(optimizer);
    if (epochs) c.mlp.epochs = *epochs;
    if (batch_size) c.mlp.batch_size = *batch_size;
    return c;
  }
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "random seed");
}

void add_data(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--embeddings", o.embeddings, "vector-text embedding file");
  cmd->add_option("--lexicon", o.lexicon, "lexicon CSV (word,category,split)");
}

void add_sr(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--gamma,--gammas", o.gammas, "discount factor(s)")->delimiter(',');
  cmd->add_option("--horizon", o.horizon, "SR truncation horizon");
  cmd->add_flag("--zero-diagonal", o.zero_diagonal, "drop self-transitions");
}

void add_mlp(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--hidden", o.hidden, "hidden layer width");
  cmd->add_option("--dropout", o.dropout, "input dropout rate");
  cmd->add_option("--lr,--learning-rate", o.learning_rate, "SGD learning rate");
  cmd->add_option("--optimizer", o.optimizer, "sgd or adam")->check(CLI::IsMember({"sgd", "adam"}));
  cmd->add_option("--momentum", o.momentum, "SGD momentum");
  cmd->add_option("--epochs", o.epochs, "training epochs");
  cmd->add_option("--batch-size", o.batch_size, "mini-batch size");
}

fs::path require_output_dir(const PipelineConfig& c) {
  if (c.output_dir.empty())
    throw ValidationError("no output directory: pass --out-dir, set output_dir, or set COGMAP_OUTPUT_DIR");
  fs::create_directories(c.output_dir);
  return c.output_dir;
}

void require(const fs::path& p, const char* what) {
  if (p.empty()) throw ValidationError(std::string("missing ") + what);
}

Lexicon lexicon_from_states(const std::vector<std::string>& words) {
  Lexicon lex;
  for (const auto& w : words) lex.training.push_back({w, "state"});
  lex.categories = {"state"};
  return lex;
}

int cmd_build_sr(const Overrides& o) {
  const auto c = o.resolve();
  require(c.embeddings_path, "--embeddings");
  require(c.lexicon_path, "--lexicon");
  const auto dir = require_output_dir(c);
  const auto table = load_embeddings(c.embeddings_path);
  const auto lex = load_lexicon(c.lexicon_path);
  const auto t = build_transition_matrix(table, lex, TransitionOptions{c.zero_diagonal});
  write_file(dir / "transition.csv", matrix_to_csv(t.values));
  write_file(dir / "transition.json", transition_to_json(t));
  for (double g : c.gammas) {
    const auto sr = successor_matrix(t, g, c.horizon);
    const std::string tag = gamma_tag(g);
    write_file(dir / ("sr_gamma_" + tag + ".csv"), matrix_to_csv(sr.values));
    write_file(dir / ("sr_gamma_" + tag + ".json"), successor_to_json(sr));
    std::cout << "wrote " << (dir / ("sr_gamma_" + tag + ".csv")).string() << "\n";
  }
  return 0;
}

int cmd_train(const Overrides& o, const std::string& sr_path, const std::string& out_path,
              const std::string& report_path) {
  const auto c = o.resolve();
  require(c.embeddings_path, "--embeddings");
  const auto table = load_embeddings(c.embeddings_path);
  const auto sr = successor_from_json(read_file(sr_path));
  const auto lex = lexicon_from_states(sr.state_words);
  const auto examples = build_examples(table, lex, sr, Split::Train);
  MlpConfig mlp = c.mlp;
  mlp.input_dim = table.dimension();
  mlp.output_dim = sr.size();
  mlp.seed = c.seed;
  const auto result = train(mlp, examples);
  write_file(out_path, model_to_json(result.model));
  if (!report_path.empty()) {
    nlohmann::json j;
    j["seed"] = result.report.seed;
    j["lossPerEpoch"] = result.report.loss_per_epoch;
    j["finalTrainLoss"] = result.report.final_train_loss;
    write_file(report_path, j.dump(1) + "\n");
  }
  std::printf("epochs=%d first_loss=%.6f last_loss=%.6f final_train_loss=%.6f\n", mlp.epochs,
              result.report.loss_per_epoch.front(), result.report.loss_per_epoch.back(),
              result.report.final_train_loss);
  return 0;
}

int cmd_predict(const Overrides& o, const std::string& model_path, const std::vector<std::string>& words,
                const std::string& out_path) {
  const auto c = o.resolve();
  require(c.embeddings_path, "--embeddings");
  const auto model = model_from_json(read_file(model_path));
  const auto table = load_embeddings(c.embeddings_path);

  LabeledTable t;
  if (!words.empty()) {
    for (const auto& w : words) {
      t.words.push_back(w);
      t.categories.emplace_back();
      t.splits.emplace_back();
    }
  } else {
    require(c.lexicon_path, "--lexicon or --words");
    const auto lex = load_lexicon(c.lexicon_path);
    for (Split s : {Split::Train, Split::Validation})
      for (const auto& e : lex.entries(s)) {
        t.words.push_back(e.word);
        t.categories.push_back(e.category);
        t.splits.emplace_back(to_string(s));
      }
    if (lex.state_count() == model.config.output_dim) t.columns = lex.training_words();
  }
  if (t.columns.empty())
    for (std::size_t j = 0; j < model.config.output_dim; ++j) t.columns.push_back("s" + std::to_string(j));
  t.values = predict_all(model, table, t.words);
  const auto csv = format_labeled_csv(t);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  return 0;
}

int cmd_project(const Overrides& o, const std::string& in_path, const std::string& out_path,
                const std::string& svg_path) {
  const auto c = o.resolve();
  const auto input = parse_labeled_csv(read_file(in_path));
  const auto d = pairwise_euclidean(input.values);
  auto p = classical_mds(d, 2);
  if (c.smacof) p = smacof_refine(d, p);
  LabeledTable out = input;
  out.columns = {"x", "y"};
  out.values = p.coordinates;
  const auto csv = format_labeled_csv(out);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  if (!svg_path.empty()) {
    std::vector<std::string> categories;
    std::vector<MapPoint> points;
    for (std::size_t i = 0; i < out.words.size(); ++i) {
      if (std::find(categories.begin(), categories.end(), out.categories[i]) == categories.end() &&
          !out.categories[i].empty())
        categories.push_back(out.categories[i]);
      points.push_back({out.values[i][0], out.values[i][1], out.words[i], out.categories[i],
                        out.splits[i] == "validation"});
    }
    write_file(svg_path, render_svg(points, categories, fs::path(in_path).stem().string()));
  }
  std::fprintf(stderr, "stress=%.6f\n", p.stress);
  return 0;
}

int cmd_gdv(const std::string& in_path, const std::string& split_filter, const std::string& json_path) {
  const auto input = parse_labeled_csv(read_file(in_path));
  LabeledPointSet set;
  for (std::size_t i = 0; i < input.words.size(); ++i) {
    if (split_filter != "all" && input.splits[i] != split_filter) continue;
    set.points.push_back(input.values[i]);
    set.labels.push_back(input.categories[i]);
  }
  const auto report = gdv(set);
  if (!json_path.empty()) write_file(json_path, gdv_report_to_json(report));
  std::printf("%.4f\n", report.gdv);
  return 0;
}

int cmd_run(const Overrides& o) {
  const auto c = o.resolve();
  const auto m = run_pipeline(c);
  for (const auto& r : m.runs)
    std::printf("gamma=%s gdv_all=%.4f gdv_train=%.4f gdv_validation=%.4f gdv_projected=%.4f loss %.4f -> %.4f\n",
                gamma_tag(r.gamma).c_str(), r.gdv_all, r.gdv_train, r.gdv_validation, r.gdv_projected_all,
                r.first_epoch_loss, r.last_epoch_loss);
  std::printf("manifest: %s\n", m.manifest_path.string().c_str());
  return 0;
}

int cmd_oracle(const Overrides& o, const std::string& transition_path, const std::string& start,
               std::size_t samples) {
  const auto c = o.resolve();
  TransitionMatrix t;
  if (!transition_path.empty()) {
    t = transition_from_json(read_file(transition_path));
  } else {
    require(c.embeddings_path, "--transition or --embeddings");
    require(c.lexicon_path, "--lexicon");
    t = build_transition_matrix(load_embeddings(c.embeddings_path), load_lexicon(c.lexicon_path),
                                TransitionOptions{c.zero_diagonal});
  }
  std::size_t start_index = 0;
  if (auto idx = parse_integer(start); idx && *idx >= 0) {
    start_index = static_cast<std::size_t>(*idx);
  } else {
    auto it = std::find(t.state_words.begin(), t.state_words.end(), start);
    if (it == t.state_words.end()) throw ValidationError("unknown start state '" + start + "'");
    start_index = static_cast<std::size_t>(it - t.state_words.begin());
  }
  const double gamma = c.gammas.front();
  const auto est = rollout_occupancy_oracle(t, gamma, c.horizon, start_index, samples, c.seed);
  const auto closed = successor_matrix(t, gamma, c.horizon);
  std::cout << "state,estimate,standard_error,closed_form\n";
  for (std::size_t j = 0; j < t.size(); ++j)
    std::cout << t.state_words[j] << "," << format_double(est.mean[j]) << ","
              << format_double(est.standard_error[j]) << "," << format_double(closed.values(start_index, j))
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successor-representation cognitive maps over word embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", COGMAP_VERSION);

  Overrides o;

  auto* build_sr = app.add_subcommand("build-sr", "embeddings + lexicon -> transition and SR matrices");
  add_common(build_sr, o);
  add_data(build_sr, o);
  add_sr(build_sr, o);
  build_sr->add_option("--out-dir,--output-dir", o.output_dir, "output directory");

  std::string sr_path, model_out, report_out;
  auto* train_cmd = app.add_subcommand("train", "SR + embeddings -> model checkpoint");
  add_common(train_cmd, o);
  add_data(train_cmd, o);
  add_mlp(train_cmd, o);
  train_cmd->add_option("--sr", sr_path, "SR matrix JSON")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", model_out, "checkpoint path")->required();
  train_cmd->add_option("--report", report_out, "training report JSON path");

  std::string model_in, predictions_out;
  std::vector<std::string> words;
  auto* predict_cmd = app.add_subcommand("predict", "checkpoint + words -> distributions CSV");
  add_common(predict_cmd, o);
  add_data(predict_cmd, o);
  predict_cmd->add_option("--model", model_in, "checkpoint JSON")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--words", words, "comma-separated words (default: all lexicon words)")->delimiter(',');
  predict_cmd->add_option("--out", predictions_out, "output CSV (default stdout)");

  std::string project_in, project_out, svg_out;
  auto* project_cmd = app.add_subcommand("project", "distributions CSV -> 2-D MDS projection");
  add_common(project_cmd, o);
  project_cmd->add_option("--input", project_in, "labeled CSV")->required()->check(CLI::ExistingFile);
  project_cmd->add_option("--out", project_out, "projection CSV (default stdout)");
  project_cmd->add_option("--svg", svg_out, "SVG map path");
  project_cmd->add_flag("--smacof", o.smacof, "refine with SMACOF iterations");

  std::string gdv_in, gdv_split = "all", gdv_json;
  auto* gdv_cmd = app.add_subcommand("gdv", "labeled CSV -> generalized discrimination value");
  add_common(gdv_cmd, o);
  gdv_cmd->add_option("--input", gdv_in, "labeled CSV")->required()->check(CLI::ExistingFile);
  gdv_cmd->add_option("--split", gdv_split, "all, train or validation")
      ->check(CLI::IsMember({"all", "train", "validation"}));
  gdv_cmd->add_option("--json", gdv_json, "write full report JSON");

  auto* run_cmd = app.add_subcommand("run", "full pipeline");
  add_common(run_cmd, o);
  add_data(run_cmd, o);
  add_sr(run_cmd, o);
  add_mlp(run_cmd, o);
  run_cmd->add_option("--out-dir,--output-dir", o.output_dir, "output directory");
  run_cmd->add_flag("--smacof", o.smacof, "refine projections with SMACOF");

  std::string transition_in, start = "0";
  std::size_t samples = 100000;
  auto* oracle_cmd = app.add_subcommand("oracle", "Monte Carlo rollout estimate of one SR row");
  add_common(oracle_cmd, o);
  add_data(oracle_cmd, o);
  add_sr(oracle_cmd, o);
  oracle_cmd->add_option("--transition", transition_in, "transition JSON")->check(CLI::ExistingFile);
  oracle_cmd->add_option("--start", start, "start state (index or word)");
  oracle_cmd->add_option("--samples", samples, "trajectory count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build_sr) return cmd_build_sr(o);
    if (*train_cmd) return cmd_train(o, sr_path, model_out, report_out);
    if (*predict_cmd) return cmd_predict(o, model_in, words, predictions_out);
    if (*project_cmd) return cmd_project(o, project_in, project_out, svg_out);
    if (*gdv_cmd) return cmd_gdv(gdv_in, gdv_split, gdv_json);
    if (*run_cmd) return cmd_run(o);
    if (*oracle_cmd) return cmd_oracle(o, transition_in, start, samples);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
