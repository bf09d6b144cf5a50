#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/mlp.hpp"

namespace cogmap {

struct PipelineConfig {
  std::filesystem::path embeddings_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path output_dir;
  std::vector<double> gammas{1.0, 0.3};
  int horizon = 5;
  bool zero_diagonal = false;
  bool smacof = false;
  MlpConfig mlp;  // input/output dims are filled from the data
  std::uint64_t seed = 0;

  void validate() const;
  // Canonical "key=value" lines; parse_config_text(to_text()) reproduces the config.
  std::string to_text() const;
};

// Flat key=value file; '#' starts a comment. Relative paths resolve against
// `base_dir`. Unknown keys are a ValidationError.
void apply_config_text(PipelineConfig& config, std::string_view text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// FNV-1a 64 over the canonical text, as 16 hex digits.
std::string config_hash(const PipelineConfig& config);

struct GammaArtifacts {
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::filesystem::path> files;  // role -> path
  double gdv_all = 0.0;
  double gdv_train = 0.0;
  double gdv_validation = 0.0;
  double gdv_projected_all = 0.0;
  double first_epoch_loss = 0.0;
  double last_epoch_loss = 0.0;
};

struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::filesystem::path transition_csv;
  std::filesystem::path transition_json;
  std::vector<GammaArtifacts> runs;
  std::filesystem::path manifest_path;
};

// Ingest, transition matrix, and for each gamma: SR, training, prediction,
// MDS projection, SVG map, GDV reports. Files created before a failure are
// removed, and the error is rethrown with the stage name prefixed.
RunManifest run_pipeline(const PipelineConfig& config);

// CSV with "word,category,split" followed by numeric columns.
struct LabeledTable {
  std::vector<std::string> columns;  // numeric column names
  std::vector<std::string> words;
  std::vector<std::string> categories;
  std::vector<std::string> splits;
  std::vector<std::vector<double>> values;
};

LabeledTable parse_labeled_csv(std::string_view text);
std::string format_labeled_csv(const LabeledTable& table);

}  // namespace cogmap
