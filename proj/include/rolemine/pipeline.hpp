#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rolemine/corpus.hpp"
#include "rolemine/io.hpp"

namespace rolemine {

/// Paths are absolute after loading; relative entries in the file resolve
/// against the config file's directory.
struct PipelineConfig {
  std::filesystem::path corpus;    // directory of .xml/.txt articles
  std::filesystem::path work_dir;  // every artifact lands here
  std::optional<std::filesystem::path> keywords;   // fixed keyword table; induced when unset
  std::optional<std::filesystem::path> stopwords;  // bundled list when unset
  std::optional<std::filesystem::path> curation;   // curation log (JSON array of ops)
  std::optional<std::filesystem::path> gold;       // gold.jsonl for eval
  std::optional<std::filesystem::path> model;      // defaults to work_dir/model.json
  std::optional<std::filesystem::path> roleset;    // defaults to work_dir/roleset.json
  std::optional<std::filesystem::path> classify_input;  // sections.jsonl to classify; defaults to work_dir's

  size_t min_mention_count = 5;
  size_t min_keyword_freq = 20;
  double cluster_threshold = 0.5;
  double alpha = 1.0;
  size_t sample_size = 0;  // 0 keeps every section
  uint64_t seed = 1;
  bool expand_group_subjects = false;

  /// Throws Error(ConfigInvalid) on syntax errors, unknown keys or
  /// non-positive thresholds.
  static PipelineConfig parse(std::string_view toml, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& file);
  void validate() const;

  std::filesystem::path artifact(std::string_view name) const { return work_dir / std::string(name); }
  std::filesystem::path model_path() const { return model.value_or(artifact("model.json")); }
  std::filesystem::path roleset_path() const { return roleset.value_or(artifact("roleset.json")); }
  std::filesystem::path curation_path() const { return curation.value_or(artifact("curation.json")); }
};

enum class Stage { Ingest, Extract, Normalize, Discover, Train, Classify, Eval };

std::string_view to_string(Stage s);
std::optional<Stage> stage_from_string(std::string_view s);
const std::vector<Stage>& all_stages();

struct StageResult {
  Stage stage = Stage::Ingest;
  json stats = json::object();
  std::vector<Diagnostic> diagnostics;
  std::vector<std::filesystem::path> outputs;
};

/// Runs one stage, reading its inputs from and writing its outputs to the
/// work directory. Outputs are written atomically.
///
/// Throws Error(MissingPrerequisite) when an input artifact is absent.
StageResult run_stage(Stage stage, const PipelineConfig& config);

StageResult run_ingest(const PipelineConfig& config);
StageResult run_extract(const PipelineConfig& config);
StageResult run_normalize(const PipelineConfig& config);
StageResult run_discover(const PipelineConfig& config);
StageResult run_train(const PipelineConfig& config);
StageResult run_classify(const PipelineConfig& config);
StageResult run_eval(const PipelineConfig& config);

StopwordSet load_stopword_config(const PipelineConfig& config);
/// The configured keyword file if set, else the one the normalize stage wrote.
KeywordTable load_active_keywords(const PipelineConfig& config);
std::vector<CurationOp> load_curation(const PipelineConfig& config);

/// Loads the discovery state (mentions + rolegraph.json) of a work directory.
RoleGraphFile load_discovery_state(const PipelineConfig& config);

/// Applies ops that still resolve; stale ones (unknown ids after a re-run)
/// are skipped with a diagnostic.
RoleSet apply_curation_lenient(const ClusterState& state, const std::vector<CurationOp>& ops,
                               std::vector<Diagnostic>* diagnostics);

}  // namespace rolemine
