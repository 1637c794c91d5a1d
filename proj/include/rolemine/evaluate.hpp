#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rolemine {

using SubjectRole = std::pair<std::string, std::string>;
/// doc_id -> (subject, role) pairs
using PairsByDoc = std::map<std::string, std::set<SubjectRole>>;

struct GoldAnnotation {
  std::string doc_id;
  std::vector<SubjectRole> pairs;
};

PairsByDoc gold_by_doc(const std::vector<GoldAnnotation>& gold);

/// Case-folds, collapses whitespace and drops periods: "J. B." -> "j b".
std::string normalize_subject(std::string_view subject);

struct RoleCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  friend bool operator==(const RoleCounts&, const RoleCounts&) = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Metrics prf(const RoleCounts& c);
/// 2PR / (P + R), 0 when both are 0.
double f1_score(double precision, double recall);

/// Per-role counts. A predicted pair is a hit iff the same document's gold
/// holds an identical pair after subject normalization. Documents present on
/// only one side count entirely as fp or fn.
std::map<std::string, RoleCounts> match_pairs(const PairsByDoc& predicted, const PairsByDoc& gold);

enum class ErrorCause { MentionExtraction, MissingRole, Classification };
std::string_view to_string(ErrorCause cause);

struct CauseCounts {
  size_t precision_errors = 0;  // false positives
  size_t recall_errors = 0;     // false negatives
};

/// What the extractor saw for one document.
struct DocTrace {
  std::set<std::string> subjects;  // subjects of all extracted mentions
};

/// Attributes each false positive and false negative to one cause.
///
/// FN: role unknown to the model -> missing role; subject never extracted ->
/// mention extraction; otherwise classification. FP: subject absent from the
/// gold -> mention extraction; otherwise classification.
///
/// Throws Error(TraceUnavailable) when a document with errors has no trace.
std::map<ErrorCause, CauseCounts> classify_errors(const PairsByDoc& predicted, const PairsByDoc& gold,
                                                  const std::map<std::string, DocTrace>& trace,
                                                  const std::vector<std::string>& known_roles);

struct RoleScore {
  RoleCounts counts;
  Metrics metrics;
  bool scored = true;  // false for roles outside the declared set
};

struct EvalReport {
  std::map<std::string, RoleScore> per_role;
  // Unweighted means of per-role precision and recall over scored roles; f1
  // is computed from the two means.
  Metrics averages;
  RoleCounts totals;
  std::optional<std::map<ErrorCause, CauseCounts>> errors;
  size_t documents = 0;
};

/// `declared_roles` empty means every role is scored.
EvalReport evaluate(const PairsByDoc& predicted, const PairsByDoc& gold, const std::vector<std::string>& declared_roles,
                    const std::map<std::string, DocTrace>* trace = nullptr);

/// Aligned plain-text table, one row per role plus the average.
std::string format_report(const EvalReport& report);

}  // namespace rolemine
