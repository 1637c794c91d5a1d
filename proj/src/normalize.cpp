#include "rolemine/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>

#include "rolemine/error.hpp"
#include "rolemine/stemmer.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

std::string_view to_string(KeywordKind kind) { return kind == KeywordKind::Action ? "action" : "object"; }

KeywordKind keyword_kind_from_string(std::string_view s) {
  if (s == "action") return KeywordKind::Action;
  if (s == "object") return KeywordKind::Object;
  throw Error(ErrorCode::ConfigInvalid, "unknown keyword kind '" + std::string(s) + "'");
}

KeywordTable::KeywordTable(std::vector<KeywordEntry> entries) : entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(), [](const KeywordEntry& a, const KeywordEntry& b) {
    if (a.kind != b.kind) return a.kind == KeywordKind::Action;
    return a.stem < b.stem;
  });
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].stem.empty()) throw Error(ErrorCode::ConfigInvalid, "empty keyword stem");
    if (!index_.emplace(entries_[i].stem, i).second) {
      throw Error(ErrorCode::ConfigInvalid, "keyword '" + entries_[i].stem + "' listed twice");
    }
    if (entries_[i].kind == KeywordKind::Action) ++action_count_;
  }
}

std::optional<KeywordKind> KeywordTable::kind_of(std::string_view stem) const {
  auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].kind;
}

std::optional<size_t> KeywordTable::index_of(std::string_view stem) const {
  auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool KeywordTable::is_action(std::string_view stem) const {
  return stem == kPerform || kind_of(stem) == KeywordKind::Action;
}

bool KeywordTable::is_object(std::string_view stem) const {
  return stem != kPerform && kind_of(stem) == KeywordKind::Object;
}

std::string KeywordTable::fingerprint() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& e : entries_) {
    feed(e.stem);
    feed(":");
    feed(to_string(e.kind));
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

constexpr const char* kDefaultStopwords[] = {
    "a",        "about",   "above",      "after",     "again",     "against",  "all",      "am",
    "an",       "and",     "any",        "are",       "aren't",    "as",       "at",       "be",
    "because",  "been",    "before",     "being",     "below",     "between",  "both",     "but",
    "by",       "can't",   "cannot",     "could",     "couldn't",  "did",      "didn't",   "do",
    "does",     "doesn't", "doing",      "don't",     "down",      "during",   "each",     "few",
    "for",      "from",    "further",    "had",       "hadn't",    "has",      "hasn't",   "have",
    "haven't",  "having",  "he",         "he'd",      "he'll",     "he's",     "her",      "here",
    "here's",   "hers",    "herself",    "him",       "himself",   "his",      "how",      "how's",
    "i",        "i'd",     "i'll",       "i'm",       "i've",      "if",       "in",       "into",
    "is",       "isn't",   "it",         "it's",      "its",       "itself",   "let's",    "me",
    "more",     "most",    "mustn't",    "my",        "myself",    "no",       "nor",      "not",
    "of",       "off",     "on",         "once",      "only",      "or",       "other",    "ought",
    "our",      "ours",    "ourselves",  "out",       "over",      "own",      "same",     "shan't",
    "she",      "she'd",   "she'll",     "she's",     "should",    "shouldn't", "so",      "some",
    "such",     "than",    "that",       "that's",    "the",       "their",    "theirs",   "them",
    "themselves", "then",  "there",      "there's",   "these",     "they",     "they'd",   "they'll",
    "they're",  "they've", "this",       "those",     "through",   "to",       "too",      "under",
    "until",    "up",      "very",       "was",       "wasn't",    "we",       "we'd",     "we'll",
    "we're",    "we've",   "were",       "weren't",   "what",      "what's",   "when",     "when's",
    "where",    "where's", "which",      "while",     "who",       "who's",    "whom",     "why",
    "why's",    "with",    "won't",      "would",     "wouldn't",  "you",      "you'd",    "you'll",
    "you're",   "you've",  "your",       "yours",     "yourself",  "yourselves",
};

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

// Lowercased token with surrounding punctuation removed; curly apostrophes
// are folded to ASCII so "didn’t" hits the list.
std::string clean_token(std::string_view raw) {
  std::string s;
  s.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw.compare(i, 3, "\xE2\x80\x99") == 0) {
      s += '\'';
      i += 2;
    } else {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i])));
    }
  }
  size_t b = 0, e = s.size();
  while (b < e && !is_word_char(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && !is_word_char(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> clean_side(const std::vector<std::string>& words, const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    for (const auto& piece : text::split_ws(w)) {
      auto t = clean_token(piece);
      if (t.empty() || stopwords.count(t)) continue;
      if (std::none_of(t.begin(), t.end(), [](unsigned char c) { return std::isalpha(c) || c >= 0x80; })) continue;
      out.push_back(stem(t));
    }
  }
  return out;
}

using Pair = std::pair<std::vector<std::string>, std::vector<std::string>>;

template <typename M, typename F>
size_t distinct_pairs(const std::vector<M>& ms, F key) {
  std::set<Pair> seen;
  for (const auto& m : ms) seen.insert(key(m));
  return seen.size();
}

Pair norm_key(const NormalizedMention& m) { return {m.action_terms, m.object_terms}; }

Pair raw_key(const RoleMention& m) {
  auto lower = [](const std::vector<std::string>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& w : v) out.push_back(text::to_lower_ascii(w));
    return out;
  };
  return {lower(m.action), lower(m.object)};
}

std::string where(const RoleMention& m) {
  return m.doc_id + "#" + std::to_string(m.sentence_index);
}

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet words(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
  return words;
}

StopwordSet load_stopwords(std::string_view file_contents) {
  StopwordSet out;
  size_t start = 0;
  while (start <= file_contents.size()) {
    auto nl = file_contents.find('\n', start);
    if (nl == std::string_view::npos) nl = file_contents.size();
    const auto line = text::trim(file_contents.substr(start, nl - start));
    if (!line.empty() && line[0] != '#') out.insert(text::to_lower_ascii(line));
    start = nl + 1;
  }
  return out;
}

NormalizedMention clean_mention(const RoleMention& m, const StopwordSet& stopwords) {
  NormalizedMention out;
  out.doc_id = m.doc_id;
  out.sentence_index = m.sentence_index;
  out.subject = m.subject;
  out.action_terms = clean_side(m.action, stopwords);
  if (out.action_terms.empty()) {
    throw Error(ErrorCode::DegenerateMention,
                "action '" + text::join(m.action, " ") + "' is empty after cleaning");
  }
  out.object_terms = clean_side(m.object, stopwords);
  return out;
}

std::vector<NormalizedMention> filter_infrequent(const std::vector<NormalizedMention>& mentions, size_t min_count) {
  std::map<Pair, size_t> counts;
  for (const auto& m : mentions) ++counts[norm_key(m)];
  std::vector<NormalizedMention> out;
  for (const auto& m : mentions) {
    if (counts[norm_key(m)] >= min_count) out.push_back(m);
  }
  return out;
}

KeywordTable induce_keywords(const std::vector<NormalizedMention>& mentions, size_t min_freq) {
  std::map<std::string, std::pair<size_t, size_t>> freq;
  for (const auto& m : mentions) {
    for (const auto& t : m.action_terms) ++freq[t].first;
    for (const auto& t : m.object_terms) ++freq[t].second;
  }
  std::vector<KeywordEntry> entries;
  for (const auto& [stem_, f] : freq) {
    if (f.first + f.second < min_freq) continue;
    KeywordEntry e;
    e.stem = stem_;
    e.kind = (f.first >= f.second || stem_ == kPerform) ? KeywordKind::Action : KeywordKind::Object;
    e.freq_actions = f.first;
    e.freq_objects = f.second;
    entries.push_back(std::move(e));
  }
  if (entries.empty()) {
    throw Error(ErrorCode::EmptyTable, "no term occurs " + std::to_string(min_freq) + " times");
  }
  return KeywordTable(std::move(entries));
}

NormalizedMention transform_mention(const NormalizedMention& m, const KeywordTable& kw) {
  NormalizedMention out;
  out.doc_id = m.doc_id;
  out.sentence_index = m.sentence_index;
  out.subject = m.subject;
  auto gather = [](std::vector<std::string>& dst, const std::vector<std::string>& src, auto keep) {
    for (const auto& t : src) {
      if (keep(t) && std::find(dst.begin(), dst.end(), t) == dst.end()) dst.push_back(t);
    }
  };
  auto is_action = [&kw](const std::string& t) { return kw.is_action(t); };
  auto is_object = [&kw](const std::string& t) { return kw.is_object(t); };
  gather(out.action_terms, m.action_terms, is_action);
  gather(out.action_terms, m.object_terms, is_action);
  gather(out.object_terms, m.object_terms, is_object);
  gather(out.object_terms, m.action_terms, is_object);
  if (out.action_terms.empty() && out.object_terms.empty()) {
    throw Error(ErrorCode::NullMention, "no keyword in (" + text::join(m.action_terms, " ") + ", " +
                                            text::join(m.object_terms, " ") + ")");
  }
  if (out.action_terms.empty()) out.action_terms.emplace_back(kPerform);
  return out;
}

NormalizeResult normalize_corpus(const std::vector<RoleMention>& mentions, const StopwordSet& stopwords,
                                 const NormalizeOptions& options) {
  NormalizeResult res;
  auto& st = res.stats;
  st.raw_mentions = mentions.size();
  st.raw_distinct_pairs = distinct_pairs(mentions, raw_key);

  std::vector<NormalizedMention> cleaned;
  cleaned.reserve(mentions.size());
  for (const auto& m : mentions) {
    try {
      cleaned.push_back(clean_mention(m, stopwords));
    } catch (const Error& e) {
      ++st.degenerate;
      res.diagnostics.push_back({where(m), e.what()});
    }
  }
  st.cleaned_mentions = cleaned.size();
  st.cleaned_distinct_pairs = distinct_pairs(cleaned, norm_key);

  auto filtered = filter_infrequent(cleaned, options.min_mention_count);
  st.filtered_mentions = filtered.size();
  st.filtered_distinct_pairs = distinct_pairs(filtered, norm_key);

  res.keywords = options.keywords ? *options.keywords : induce_keywords(filtered, options.min_keyword_freq);

  res.mentions.reserve(filtered.size());
  for (const auto& m : filtered) {
    try {
      res.mentions.push_back(transform_mention(m, res.keywords));
    } catch (const Error& e) {
      ++st.null_mentions;
      res.diagnostics.push_back({m.doc_id + "#" + std::to_string(m.sentence_index), e.what()});
    }
  }
  st.transformed_mentions = res.mentions.size();
  st.transformed_distinct_pairs = distinct_pairs(res.mentions, norm_key);
  return res;
}

std::optional<NormalizedMention> normalize_for_classification(const RoleMention& m, const StopwordSet& stopwords,
                                                              const KeywordTable& kw) {
  try {
    return transform_mention(clean_mention(m, stopwords), kw);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateMention || e.code() == ErrorCode::NullMention) return std::nullopt;
    throw;
  }
}

}  // namespace rolemine
