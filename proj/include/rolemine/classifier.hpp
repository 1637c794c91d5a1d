#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rolemine/corpus.hpp"
#include "rolemine/curation.hpp"
#include "rolemine/mentions.hpp"
#include "rolemine/normalize.hpp"

namespace rolemine {

/// One bit per keyword of the table, in table order.
struct FeatureVector {
  std::vector<uint8_t> bits;

  bool all_zero() const;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Sets bit i iff keyword i occurs among the mention's terms. Stems outside
/// the table are ignored.
///
/// Throws Error(TableMismatch) for terms that were never cleaned (empty,
/// containing whitespace or uppercase letters).
FeatureVector featurize(const NormalizedMention& m, const KeywordTable& kw);

/// Bernoulli naive Bayes over binary features.
struct NBModel {
  std::vector<std::string> classes;  // sorted
  std::vector<size_t> class_counts;
  std::vector<double> log_priors;
  // [class][feature]
  std::vector<std::vector<double>> log_present;
  std::vector<std::vector<double>> log_absent;
  double alpha = 1.0;
  size_t feature_count = 0;
  std::string keyword_fingerprint;
  std::vector<std::string> feature_names;

  friend bool operator==(const NBModel&, const NBModel&) = default;
};

struct LabeledVector {
  FeatureVector features;
  std::string label;
};

/// P(f=1|c) = (count(f=1,c) + alpha) / (n_c + 2 alpha), priors n_c / N.
///
/// Every name in `declared_classes` must have an example
/// (Error(ClassWithNoExamples)); an empty set of examples is
/// Error(EmptyTrainingSet).
NBModel train(const std::vector<LabeledVector>& examples, size_t feature_count, double alpha = 1.0,
              const std::vector<std::string>& declared_classes = {});

/// Featurizes and trains; the model records the table's fingerprint.
NBModel train(const std::vector<LabeledMention>& examples, const KeywordTable& kw, double alpha = 1.0,
              const std::vector<std::string>& declared_classes = {});

/// Unnormalized log joint per class: log prior + sum of feature log likelihoods.
std::vector<double> log_scores(const NBModel& model, const FeatureVector& fv);
/// Class posteriors; sums to 1.
std::vector<double> posterior(const NBModel& model, const FeatureVector& fv);

/// NULL (nullopt) iff the vector is all zero; otherwise the best class, ties
/// going to the lexicographically first name.
std::optional<std::string> predict(const NBModel& model, const FeatureVector& fv);

/// Throws Error(TableMismatch) when the model was trained on another table.
std::optional<std::string> predict(const NBModel& model, const NormalizedMention& m, const KeywordTable& kw);

struct ExtractOptions {
  const StopwordSet* stopwords = nullptr;  // default list when null
  bool expand_group_subjects = false;
};

struct MentionTrace {
  RoleMention mention;
  std::optional<NormalizedMention> normalized;  // nullopt when dropped in cleaning
  std::optional<std::string> role;              // nullopt for NULL predictions
};

struct ExtractionResult {
  std::string doc_id;
  std::set<std::pair<std::string, std::string>> pairs;  // (subject, role)
  std::vector<MentionTrace> trace;
  std::vector<Diagnostic> diagnostics;
  bool list_format = false;
};

/// Mentions -> redundancy removal -> features -> classification -> pair set.
/// List-format sections yield no pairs and a ListFormatInput diagnostic.
ExtractionResult extract_roles(const Document& doc, const NBModel& model, const KeywordTable& kw,
                               const ExtractOptions& options = {});

ExtractionResult extract_roles(std::string_view text, const NBModel& model, const KeywordTable& kw,
                               const ExtractOptions& options = {});

}  // namespace rolemine
