#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rolemine/corpus.hpp"
#include "rolemine/mentions.hpp"

namespace rolemine {

/// Action keyword injected into mentions that end up without one.
inline constexpr std::string_view kPerform = "perform";

/// A mention with stemmed, stopword-free action and object terms.
struct NormalizedMention {
  std::string doc_id;
  size_t sentence_index = 0;
  std::string subject;
  std::vector<std::string> action_terms;
  std::vector<std::string> object_terms;

  friend bool operator==(const NormalizedMention&, const NormalizedMention&) = default;
};

enum class KeywordKind { Action, Object };

std::string_view to_string(KeywordKind kind);
KeywordKind keyword_kind_from_string(std::string_view s);

struct KeywordEntry {
  std::string stem;
  KeywordKind kind = KeywordKind::Action;
  // Corpus frequencies; unknown for hand-supplied tables.
  std::optional<size_t> freq_actions;
  std::optional<size_t> freq_objects;

  friend bool operator==(const KeywordEntry&, const KeywordEntry&) = default;
};

/// Stems partitioned into action and object keywords.
///
/// Entries are kept in feature order: action stems, then object stems, each
/// sorted lexicographically. A stem appears at most once.
class KeywordTable {
 public:
  KeywordTable() = default;

  /// Throws Error(ConfigInvalid) when a stem is listed twice.
  explicit KeywordTable(std::vector<KeywordEntry> entries);

  const std::vector<KeywordEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  size_t action_count() const { return action_count_; }
  size_t object_count() const { return entries_.size() - action_count_; }

  std::optional<KeywordKind> kind_of(std::string_view stem) const;
  /// Feature index of `stem`, or nullopt.
  std::optional<size_t> index_of(std::string_view stem) const;

  /// True for action keywords and for the injected "perform" term.
  bool is_action(std::string_view stem) const;
  bool is_object(std::string_view stem) const;

  /// FNV-1a 64 over the (kind, stem) list, as 16 hex digits.
  std::string fingerprint() const;

 private:
  std::vector<KeywordEntry> entries_;
  size_t action_count_ = 0;
  std::unordered_map<std::string, size_t> index_;
};

using StopwordSet = std::unordered_set<std::string>;

/// The bundled English stopword list.
const StopwordSet& default_stopwords();
/// One word per line; blank lines and lines starting with '#' are skipped.
StopwordSet load_stopwords(std::string_view file_contents);

/// Lowercases, drops stopwords and non-word tokens, and stems the action and
/// object. The subject is left alone.
///
/// Throws Error(DegenerateMention) if nothing is left of the action.
NormalizedMention clean_mention(const RoleMention& m, const StopwordSet& stopwords);

/// Keeps mentions whose (action_terms, object_terms) pair occurs at least
/// `min_count` times in `mentions`.
std::vector<NormalizedMention> filter_infrequent(const std::vector<NormalizedMention>& mentions, size_t min_count = 5);

/// Stems whose combined action-side and object-side frequency reaches
/// `min_freq`; a stem is an action keyword when it is at least as frequent
/// among actions as among objects. "perform" is always an action keyword.
///
/// Throws Error(EmptyTable) when no stem qualifies.
KeywordTable induce_keywords(const std::vector<NormalizedMention>& mentions, size_t min_freq = 20);

/// Rewrites a mention into keyword space: the new action holds every action
/// keyword of the mention (own side first, then the object side), the new
/// object every object keyword (object side first, then the action side).
/// Other terms are dropped; an empty action becomes {"perform"}.
///
/// Throws Error(NullMention) when no keyword survives at all.
NormalizedMention transform_mention(const NormalizedMention& m, const KeywordTable& kw);

struct NormalizeOptions {
  size_t min_mention_count = 5;
  size_t min_keyword_freq = 20;
  /// When set, used as-is instead of inducing a table from the corpus.
  std::optional<KeywordTable> keywords;
};

struct NormalizeStats {
  size_t raw_mentions = 0;
  size_t raw_distinct_pairs = 0;
  size_t cleaned_mentions = 0;
  size_t cleaned_distinct_pairs = 0;
  size_t filtered_mentions = 0;
  size_t filtered_distinct_pairs = 0;
  size_t transformed_mentions = 0;
  size_t transformed_distinct_pairs = 0;
  size_t degenerate = 0;
  size_t null_mentions = 0;
};

struct NormalizeResult {
  std::vector<NormalizedMention> mentions;
  KeywordTable keywords;
  NormalizeStats stats;
  std::vector<Diagnostic> diagnostics;
};

/// clean -> filter_infrequent -> induce_keywords (unless supplied) -> transform.
NormalizeResult normalize_corpus(const std::vector<RoleMention>& mentions, const StopwordSet& stopwords,
                                 const NormalizeOptions& options);

/// clean + transform for a single mention at extraction time. Returns nullopt
/// for degenerate and null mentions.
std::optional<NormalizedMention> normalize_for_classification(const RoleMention& m, const StopwordSet& stopwords,
                                                              const KeywordTable& kw);

}  // namespace rolemine
