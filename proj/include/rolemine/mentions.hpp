#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rolemine/corpus.hpp"

namespace rolemine {

struct Sentence {
  std::string doc_id;
  size_t index = 0;
  std::string text;
};

/// A (subject, action, object) tuple found in one sentence. Tokens keep their
/// original case; the object may be empty.
struct RoleMention {
  std::string doc_id;
  size_t sentence_index = 0;
  std::string subject;
  std::vector<std::string> action;
  std::vector<std::string> object;

  friend bool operator==(const RoleMention&, const RoleMention&) = default;
};

/// Splits on . ! ? followed by whitespace and an uppercase letter (or the end
/// of the text). Author initials ("J.B."), "e.g.", "i.e." and a few title
/// abbreviations never end a sentence.
std::vector<Sentence> split_sentences(std::string_view text, std::string_view doc_id = {});

/// Rule-based subject/verb-group/object extraction tuned for contributions
/// sections. Coordinated subjects, verb groups and objects are distributed
/// multiplicatively. "All authors"-style subjects are kept whole.
///
/// Sentences the grammar cannot parse yield no mentions; when `diagnostics`
/// is given a note is appended for them.
std::vector<RoleMention> extract_mentions(const Sentence& sentence, std::vector<Diagnostic>* diagnostics = nullptr);

/// Words of `shorter` appear in `longer` in the same relative order (gaps allowed).
bool contains_in_order(const std::vector<std::string>& longer, const std::vector<std::string>& shorter);

/// Drops every mention covered by another one with the same subject whose
/// action and object both contain its words in order. Exact duplicates keep
/// their first occurrence. Input order is preserved among survivors.
std::vector<RoleMention> remove_redundant(const std::vector<RoleMention>& mentions);

/// True for collective subjects such as "All authors" or "Both authors".
bool is_group_subject(std::string_view subject);

/// Replaces each collective-subject mention by one copy per author.
std::vector<RoleMention> expand_group_subjects(const std::vector<RoleMention>& mentions,
                                               const std::vector<std::string>& authors);

/// Individual (non-collective) subjects in order of first appearance.
std::vector<std::string> individual_subjects(const std::vector<RoleMention>& mentions);

/// Sentence split, extraction and redundancy removal for one document.
std::vector<RoleMention> extract_document_mentions(const Document& doc, std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace rolemine
