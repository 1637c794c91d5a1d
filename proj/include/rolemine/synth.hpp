#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rolemine/curation.hpp"
#include "rolemine/evaluate.hpp"
#include "rolemine/normalize.hpp"

namespace rolemine {

/// The thirteen roles the bundled model is trained on.
const std::vector<std::string>& default_role_names();

struct SynthOptions {
  size_t documents = 300;
  uint64_t seed = 1;
  double xml_rate = 0.7;           // share of JATS files; the rest are .txt
  double list_format_rate = 0.03;  // "JB: design; DT: writing" sections
  double no_section_rate = 0.02;   // JATS articles without a matching title
};

struct SynthDoc {
  std::string doc_id;
  std::string file_name;  // relative to the corpus directory
  std::string content;    // file body
  std::string section_text;
  bool has_section = true;
  bool list_format = false;
  GoldAnnotation gold;
};

/// Deterministic contributions sections with gold (subject, role) pairs.
/// Besides the thirteen roles, a few statements express roles outside the
/// taxonomy (supervision, funding, approval).
std::vector<SynthDoc> synthesize(const SynthOptions& options);

/// Writes the files under `corpus_dir` and the gold annotations to `gold_path`.
void write_synthetic_corpus(const std::vector<SynthDoc>& docs, const std::filesystem::path& corpus_dir,
                            const std::filesystem::path& gold_path);

/// Curation a careful annotator would do on a clustering of synthetic text:
/// each role cluster goes to the taxonomy role most of its mentions were
/// generated from (if that role holds at least 40% of them) and is removed
/// otherwise. Role clusters of one role are merged, then renamed.
std::vector<CurationOp> synthetic_curation(const ClusterState& state, const RoleSet& roles,
                                           const StopwordSet& stopwords, const KeywordTable& kw);

}  // namespace rolemine
