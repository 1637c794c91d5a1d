#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rolemine/classifier.hpp"
#include "rolemine/corpus.hpp"
#include "rolemine/curation.hpp"
#include "rolemine/discovery.hpp"
#include "rolemine/evaluate.hpp"
#include "rolemine/mentions.hpp"
#include "rolemine/normalize.hpp"

namespace rolemine {

using json = nlohmann::ordered_json;

/// Writes to a sibling temp file and renames it over `path` on commit().
/// Destroying an uncommitted writer removes the temp file.
class AtomicWriter {
 public:
  explicit AtomicWriter(std::filesystem::path path);
  ~AtomicWriter();
  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool done_ = false;
};

void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Throws Error(MissingPrerequisite) when the file does not exist.
std::string read_file(const std::filesystem::path& path);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

/// Calls `fn` for every non-blank line. Parse errors name the line:
/// Error(StateCorrupt).
void for_each_jsonl(const std::filesystem::path& path, const std::function<void(const json&)>& fn);

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  std::vector<T> out;
  for_each_jsonl(path, [&out](const json& j) { out.push_back(j.get<T>()); });
  return out;
}

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& items) {
  AtomicWriter w(path);
  for (const auto& item : items) w.stream() << json(item).dump() << '\n';
  w.commit();
}

// sections.jsonl
void to_json(json& j, const Document& d);
void from_json(const json& j, Document& d);
// mentions.jsonl
void to_json(json& j, const RoleMention& m);
void from_json(const json& j, RoleMention& m);
// mentions.norm.jsonl
void to_json(json& j, const NormalizedMention& m);
void from_json(const json& j, NormalizedMention& m);
// keywords.json (an array of entries)
void to_json(json& j, const KeywordEntry& e);
void from_json(const json& j, KeywordEntry& e);
json keywords_to_json(const KeywordTable& kw);
KeywordTable keywords_from_json(const json& j);

void to_json(json& j, const Pin& p);
void from_json(const json& j, Pin& p);
void to_json(json& j, const CurationOp& op);
void from_json(const json& j, CurationOp& op);
/// Accepts a bare array or {"ops": [...]}.
std::vector<CurationOp> curation_from_json(const json& j);

// roleset.json
void to_json(json& j, const RoleSet& rs);
void from_json(const json& j, RoleSet& rs);

// model.json
void to_json(json& j, const NBModel& m);
void from_json(const json& j, NBModel& m);

// gold.jsonl
void to_json(json& j, const GoldAnnotation& g);
void from_json(const json& j, GoldAnnotation& g);

/// One roles.jsonl record.
struct RoleAssignment {
  std::string doc_id;
  std::string subject;
  std::string role;
};
void to_json(json& j, const RoleAssignment& r);
void from_json(const json& j, RoleAssignment& r);

/// rolegraph.json: nodes (with member mention indices), edges, and the merge
/// history of the run that produced them.
struct RoleGraphFile {
  ClusterState state;
  double threshold = 0.5;
  std::vector<Pin> pins;
  std::vector<MergeEvent> merges;
};
json rolegraph_to_json(const ClusterState& state, double threshold, const std::vector<Pin>& pins,
                       const std::vector<MergeEvent>& merges);
/// Rebuilds the cluster state against the mentions it was computed from.
/// Throws Error(StateCorrupt) on any inconsistency.
RoleGraphFile rolegraph_from_json(const json& j, std::vector<NormalizedMention> mentions);

json report_to_json(const EvalReport& report);

}  // namespace rolemine
