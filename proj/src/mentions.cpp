#include "rolemine/mentions.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "rolemine/text.hpp"

namespace rolemine {
namespace {

// ---------------------------------------------------------------------------
// Lexicon

struct VerbForms {
  std::string_view base;
  std::string_view past;
  std::string_view participle;  // empty when equal to past
};

// Verbs that head contribution statements. Regular past forms are spelled
// out so lookups are exact-match.
constexpr VerbForms kVerbs[] = {
    {"acquire", "acquired", ""},        {"administer", "administered", ""},
    {"advise", "advised", ""},          {"agree", "agreed", ""},
    {"aid", "aided", ""},               {"analyse", "analysed", ""},
    {"analyze", "analyzed", ""},        {"annotate", "annotated", ""},
    {"approve", "approved", ""},        {"arrange", "arranged", ""},
    {"assemble", "assembled", ""},      {"assess", "assessed", ""},
    {"assist", "assisted", ""},         {"build", "built", ""},
    {"calculate", "calculated", ""},    {"carry", "carried", ""},
    {"check", "checked", ""},           {"coordinate", "coordinated", ""},
    {"collaborate", "collaborated", ""},{"collect", "collected", ""},
    {"comment", "commented", ""},       {"compile", "compiled", ""},
    {"complete", "completed", ""},      {"compute", "computed", ""},
    {"conceive", "conceived", ""},      {"conceptualize", "conceptualized", ""},
    {"conceptualise", "conceptualised", ""}, {"conduct", "conducted", ""},
    {"confirm", "confirmed", ""},       {"construct", "constructed", ""},
    {"contribute", "contributed", ""},  {"create", "created", ""},
    {"critique", "critiqued", ""},      {"curate", "curated", ""},
    {"define", "defined", ""},          {"design", "designed", ""},
    {"determine", "determined", ""},    {"develop", "developed", ""},
    {"devise", "devised", ""},          {"direct", "directed", ""},
    {"discuss", "discussed", ""},       {"do", "did", "done"},
    {"draft", "drafted", ""},           {"draw", "drew", "drawn"},
    {"edit", "edited", ""},             {"enrol", "enrolled", ""},
    {"enroll", "enrolled", ""},         {"establish", "established", ""},
    {"evaluate", "evaluated", ""},      {"examine", "examined", ""},
    {"execute", "executed", ""},        {"extract", "extracted", ""},
    {"facilitate", "facilitated", ""},  {"finalize", "finalized", ""},
    {"finalise", "finalised", ""},      {"formulate", "formulated", ""},
    {"gather", "gathered", ""},         {"generate", "generated", ""},
    {"genotype", "genotyped", ""},      {"give", "gave", "given"},
    {"guide", "guided", ""},            {"help", "helped", ""},
    {"identify", "identified", ""},     {"implement", "implemented", ""},
    {"initiate", "initiated", ""},      {"interpret", "interpreted", ""},
    {"interview", "interviewed", ""},   {"investigate", "investigated", ""},
    {"isolate", "isolated", ""},        {"lead", "led", ""},
    {"make", "made", ""},               {"manage", "managed", ""},
    {"measure", "measured", ""},        {"model", "modelled", ""},
    {"model", "modeled", ""},           {"monitor", "monitored", ""},
    {"obtain", "obtained", ""},         {"organize", "organized", ""},
    {"organise", "organised", ""},      {"oversee", "oversaw", "overseen"},
    {"participate", "participated", ""},{"perform", "performed", ""},
    {"plan", "planned", ""},            {"prepare", "prepared", ""},
    {"process", "processed", ""},       {"produce", "produced", ""},
    {"program", "programmed", ""},      {"proofread", "proofread", ""},
    {"propose", "proposed", ""},        {"provide", "provided", ""},
    {"purify", "purified", ""},         {"read", "read", ""},
    {"recruit", "recruited", ""},       {"refine", "refined", ""},
    {"review", "reviewed", ""},         {"revise", "revised", ""},
    {"run", "ran", "run"},              {"search", "searched", ""},
    {"secure", "secured", ""},          {"sequence", "sequenced", ""},
    {"set", "set", ""},                 {"share", "shared", ""},
    {"simulate", "simulated", ""},      {"summarize", "summarized", ""},
    {"summarise", "summarised", ""},    {"supervise", "supervised", ""},
    {"support", "supported", ""},       {"take", "took", "taken"},
    {"test", "tested", ""},             {"undertake", "undertook", "undertaken"},
    {"validate", "validated", ""},      {"verify", "verified", ""},
    {"visualize", "visualized", ""},    {"visualise", "visualised", ""},
    {"work", "worked", ""},             {"write", "wrote", "written"},
    {"co-write", "co-wrote", "co-written"}, {"co-design", "co-designed", ""},
    {"co-ordinate", "co-ordinated", ""},{"co-supervise", "co-supervised", ""},
    {"co-conceive", "co-conceived", ""},{"co-draft", "co-drafted", ""},
    {"fund", "funded", ""},             {"seek", "sought", ""},
    {"bring", "brought", ""},
};

struct Lexicon {
  std::unordered_set<std::string_view> past;
  std::unordered_set<std::string_view> base;
  std::unordered_map<std::string_view, std::string_view> lemma;

  Lexicon() {
    for (const auto& v : kVerbs) {
      base.insert(v.base);
      past.insert(v.past);
      lemma.emplace(v.base, v.base);
      lemma.emplace(v.past, v.base);
      if (!v.participle.empty()) {
        past.insert(v.participle);
        lemma.emplace(v.participle, v.base);
      }
    }
  }
};

const Lexicon& lexicon() {
  static const Lexicon lex;
  return lex;
}

const std::unordered_set<std::string_view> kAuxiliaries = {
    "was", "were", "is", "are", "has", "have", "had", "been", "be", "will", "would", "did"};

// Adjectives that behave like verbs after an auxiliary ("was involved in").
const std::unordered_set<std::string_view> kPredicateAdjectives = {"involved", "responsible", "instrumental"};

const std::unordered_set<std::string_view> kFreeAdverbs = {
    "also", "both", "then", "further", "together", "all", "subsequently", "mainly", "primarily", "additionally"};

const std::unordered_set<std::string_view> kParticles = {"in", "to", "out", "on", "with", "for", "up"};

const std::unordered_set<std::string_view> kDeterminers = {"the", "a", "an"};

const std::unordered_set<std::string_view> kPronouns = {"he", "she", "they", "we", "i"};

const std::array<std::string_view, 11> kGroupSubjects = {
    "all authors",     "both authors",         "the authors",       "all the authors",
    "all of the authors", "all co-authors",    "all coauthors",     "the two authors",
    "all named authors", "all listed authors", "each author"};

const std::unordered_set<std::string_view> kSentenceAbbreviations = {
    "e.g.", "i.e.", "al.", "Dr.", "Prof.", "Mr.", "Mrs.", "Ms.", "vs.", "cf.", "Fig.", "Figs.", "etc.", "No."};

// ---------------------------------------------------------------------------
// Token shapes

bool is_initials(std::string_view s) {
  // ([A-Z]\.-?)+
  if (s.empty()) return false;
  size_t i = 0;
  while (i < s.size()) {
    if (!text::is_upper(s[i])) return false;
    if (i + 1 >= s.size() || s[i + 1] != '.') return false;
    i += 2;
    if (i < s.size() && s[i] == '-') ++i;
  }
  return true;
}

bool is_author_token(std::string_view s) {
  if (s.empty() || s.size() > 12 || !text::is_upper(s[0])) return false;
  int upper = 0, lower = 0;
  for (char c : s) {
    if (text::is_upper(c)) {
      ++upper;
    } else if (text::is_lower(c)) {
      ++lower;
    } else if (c != '-' && c != '.') {
      return false;
    }
  }
  return upper >= 2 && upper <= 6 && lower < upper;
}

bool is_capitalized(std::string_view s) {
  if (s.empty() || !text::is_upper(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return text::is_alpha(c) || c == '-' || c == '.' || c == '\'' || static_cast<unsigned char>(c) >= 0x80;
  });
}

bool is_adverb(std::string_view lower) {
  if (kFreeAdverbs.count(lower)) return true;
  return lower.size() > 4 && lower.substr(lower.size() - 2) == "ly" && lower != "only" && lower != "early" &&
         lower != "apply" && lower != "supply";
}

// ---------------------------------------------------------------------------
// Tokenization

enum class Kind { Word, Comma, Semicolon, Colon, Stop };

struct Token {
  std::string text;
  std::string lower;
  Kind kind = Kind::Word;
};

bool is_connective_word(const Token& t) { return t.kind == Kind::Word && (t.lower == "and" || t.lower == "&" || t.lower == "plus"); }

std::string strip_brackets(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') {
      ++depth;
      out += ' ';
    } else if ((c == ')' || c == ']') && depth > 0) {
      --depth;
    } else if (depth == 0) {
      out += c;
    }
  }
  return out;
}

bool strip_prefix(std::string& s, std::string_view p) {
  if (s.size() >= p.size() && std::string_view(s).substr(0, p.size()) == p) {
    s.erase(0, p.size());
    return true;
  }
  return false;
}

bool strip_suffix(std::string& s, std::string_view p) {
  if (s.size() >= p.size() && std::string_view(s).substr(s.size() - p.size()) == p) {
    s.resize(s.size() - p.size());
    return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  for (auto piece : text::split_ws(strip_brackets(sentence))) {
    while (strip_prefix(piece, "\"") || strip_prefix(piece, "'") || strip_prefix(piece, "\xE2\x80\x9C") ||
           strip_prefix(piece, "\xE2\x80\x98")) {
    }
    std::vector<Token> trailing;
    while (!piece.empty()) {
      if (strip_suffix(piece, "\"") || strip_suffix(piece, "\xE2\x80\x9D") || strip_suffix(piece, "\xE2\x80\x99")) {
        continue;
      }
      const char last = piece.back();
      if (last == ',') {
        trailing.push_back({",", ",", Kind::Comma});
      } else if (last == ';') {
        trailing.push_back({";", ";", Kind::Semicolon});
      } else if (last == ':') {
        trailing.push_back({":", ":", Kind::Colon});
      } else if (last == '.' || last == '!' || last == '?') {
        if (last == '.' && (is_initials(piece) || kSentenceAbbreviations.count(piece))) break;
        trailing.push_back({std::string(1, last), std::string(1, last), Kind::Stop});
      } else if (last == '\'' && piece.size() > 1 && piece[piece.size() - 2] != 's') {
        // closing single quote
      } else {
        break;
      }
      piece.pop_back();
    }
    if (!piece.empty()) tokens.push_back({piece, text::to_lower_ascii(piece), Kind::Word});
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Grammar

using Span = std::vector<Token>;

struct VerbGroup {
  size_t begin = 0;
  size_t end = 0;  // one past the last token of the group
};

bool is_verb(const Token& t, bool base_ok) {
  if (t.kind != Kind::Word || t.text.empty() || !text::is_lower(t.text[0])) return false;
  const auto& lex = lexicon();
  if (lex.past.count(t.lower)) return true;
  return base_ok && lex.base.count(t.lower);
}

std::string_view lemma_of(const Token& t) {
  const auto& lex = lexicon();
  auto it = lex.lemma.find(t.lower);
  return it == lex.lemma.end() ? std::string_view{} : it->second;
}

// Attempts to read a verb group starting exactly at `i`.
std::optional<VerbGroup> parse_verb_group(const Span& s, size_t i, bool base_ok) {
  size_t j = i;
  bool aux = false;
  while (j < s.size() && s[j].kind == Kind::Word &&
         (kAuxiliaries.count(s[j].lower) || (is_adverb(s[j].lower) && text::is_lower(s[j].text[0])))) {
    // "did" doubles as a main verb ("did the literature search").
    if (s[j].lower == "did" && !(j + 1 < s.size() && is_verb(s[j + 1], true))) break;
    if (kAuxiliaries.count(s[j].lower)) aux = true;
    ++j;
  }
  if (j >= s.size()) return std::nullopt;

  bool head = false;
  if (is_verb(s[j], base_ok || aux)) {
    head = true;
  } else if (aux && kPredicateAdjectives.count(s[j].lower)) {
    head = true;
  } else if (aux && s[j].lower == "in" && j + 2 < s.size() && s[j + 1].lower == "charge" && s[j + 2].lower == "of") {
    return VerbGroup{i, j + 3};
  }
  if (!head) return std::nullopt;

  auto extend = [&](size_t k) {
    const auto lemma = lemma_of(s[k]);
    ++k;
    if (lemma == "take" && k < s.size() && s[k].lower == "part") ++k;
    while (k < s.size() && s[k].kind == Kind::Word && text::is_lower(s[k].text[0]) && is_adverb(s[k].lower)) ++k;
    return k;
  };

  size_t k = extend(j);
  for (;;) {
    const auto lemma = lemma_of(s[k - 1]);
    if ((lemma == "help" || lemma == "assist") && k < s.size() && is_verb(s[k], true)) {
      k = extend(k);
      continue;
    }
    if (k < s.size() && s[k].kind == Kind::Word && kParticles.count(s[k].lower)) {
      ++k;
      if (s[k - 1].lower == "to" && k < s.size() && is_verb(s[k], true)) {
        k = extend(k);
        continue;
      }
    }
    break;
  }
  return VerbGroup{i, k};
}

bool is_group_phrase(std::string_view lower) {
  return std::find(kGroupSubjects.begin(), kGroupSubjects.end(), lower) != kGroupSubjects.end();
}

// Turns one subject conjunct into a subject string, or nothing if it does not
// look like a reference to people.
std::optional<std::string> read_subject(Span conjunct) {
  while (!conjunct.empty() && kFreeAdverbs.count(conjunct.back().lower) && conjunct.back().lower != "all") {
    conjunct.pop_back();
  }
  while (!conjunct.empty() && conjunct.front().lower != "all" && conjunct.front().lower != "both" &&
         kFreeAdverbs.count(conjunct.front().lower)) {
    conjunct.erase(conjunct.begin());
  }
  if (conjunct.empty()) return std::nullopt;

  std::vector<std::string> words, lowers;
  for (const auto& t : conjunct) {
    words.push_back(t.text);
    lowers.push_back(t.lower);
  }
  const auto joined = text::join(words, " ");
  if (is_group_phrase(text::join(lowers, " "))) return joined;
  if (conjunct.size() == 1) {
    if (is_author_token(conjunct[0].text) || kPronouns.count(conjunct[0].lower)) return joined;
  }
  if (conjunct.size() <= 4 &&
      std::all_of(conjunct.begin(), conjunct.end(), [](const Token& t) { return is_capitalized(t.text); })) {
    return joined;
  }
  return std::nullopt;
}

std::vector<Span> split_conjuncts(const Span& s, size_t begin, size_t end) {
  std::vector<Span> parts(1);
  for (size_t i = begin; i < end; ++i) {
    const auto& t = s[i];
    const bool as_well_as = t.lower == "as" && i + 2 < end && s[i + 1].lower == "well" && s[i + 2].lower == "as";
    if (t.kind == Kind::Comma || is_connective_word(t) || as_well_as) {
      if (as_well_as) i += 2;
      if (!parts.back().empty()) parts.emplace_back();
      continue;
    }
    parts.back().push_back(t);
  }
  if (parts.back().empty()) parts.pop_back();
  return parts;
}

std::vector<std::string> read_subjects(const Span& s, size_t begin, size_t end) {
  std::vector<std::string> subjects;
  for (const auto& c : split_conjuncts(s, begin, end)) {
    if (auto subject = read_subject(c)) subjects.push_back(std::move(*subject));
  }
  return subjects;
}

bool subject_like(const Token& t) {
  if (t.kind != Kind::Word) return false;
  if (is_capitalized(t.text) || kPronouns.count(t.lower)) return true;
  return t.lower == "all" || t.lower == "both" || t.lower == "the" || t.lower == "authors" ||
         t.lower == "author" || t.lower == "co-authors" || t.lower == "coauthors" || t.lower == "two" ||
         t.lower == "each" || t.lower == "of" || t.lower == "named" || t.lower == "listed";
}

// If a new "SUBJECTS VERB ..." clause begins at `b`, returns the position of
// its verb group.
std::optional<VerbGroup> clause_starting_at(const Span& s, size_t b, size_t end) {
  size_t k = b;
  bool saw_subject = false;
  while (k < end && (subject_like(s[k]) || s[k].kind == Kind::Comma || is_connective_word(s[k]))) {
    saw_subject = saw_subject || subject_like(s[k]);
    ++k;
  }
  if (!saw_subject || k >= end) return std::nullopt;
  size_t v = k;
  // Let parse_verb_group consume leading adverbs/auxiliaries.
  auto group = parse_verb_group(s, v, true);
  if (!group) return std::nullopt;
  if (read_subjects(s, b, v).empty()) return std::nullopt;
  return group;
}

struct Predicate {
  std::vector<std::string> action;
  std::vector<std::vector<std::string>> objects;
};

std::vector<std::string> words_of(const Span& s, size_t begin, size_t end) {
  std::vector<std::string> out;
  for (size_t i = begin; i < end; ++i) {
    if (s[i].kind == Kind::Word) out.push_back(s[i].text);
  }
  return out;
}

std::vector<std::string> object_words(const Span& seg, size_t begin) {
  std::vector<std::string> out;
  for (size_t i = begin; i < seg.size(); ++i) {
    if (seg[i].kind != Kind::Word || kDeterminers.count(seg[i].lower)) continue;
    out.push_back(seg[i].text);
  }
  return out;
}

struct ClauseResult {
  std::vector<std::string> subjects;
  std::vector<Predicate> predicates;
};

// Parses tokens [begin, end) of one ';'-delimited clause, appending mentions.
// `inherited` supplies subjects when the clause opens with a verb.
void parse_clause(const Span& s, size_t begin, size_t end, std::vector<std::string>& inherited,
                  const Sentence& sentence, std::vector<RoleMention>& out, std::vector<Diagnostic>* diagnostics) {
  // First verb group.
  std::optional<VerbGroup> first;
  for (size_t k = begin; k < end && !first; ++k) {
    if (s[k].kind != Kind::Word) continue;
    first = parse_verb_group(s, k, true);
  }

  if (!first) {
    // A subject-only clause ("JB: designed ...") hands its subjects forward.
    auto subjects = read_subjects(s, begin, end);
    if (!subjects.empty() && end < s.size() && s[end].kind == Kind::Colon) {
      inherited = std::move(subjects);
    } else if (diagnostics && end > begin) {
      diagnostics->push_back({sentence.doc_id, "no verb group in: " + sentence.text});
    }
    return;
  }

  std::vector<std::string> subjects;
  if (first->begin == begin) {
    subjects = inherited;
  } else {
    subjects = read_subjects(s, begin, first->begin);
  }
  if (subjects.empty()) {
    if (diagnostics) diagnostics->push_back({sentence.doc_id, "no subject in: " + sentence.text});
    return;
  }
  inherited = subjects;

  // Look for a second clause hiding behind a connective ("..., and DT wrote").
  size_t pred_end = end;
  std::optional<size_t> next_clause;
  for (size_t k = first->end; k < end; ++k) {
    if (s[k].kind != Kind::Comma && !is_connective_word(s[k])) continue;
    size_t b = k + 1;
    while (b < end && (s[b].kind == Kind::Comma || is_connective_word(s[b]))) ++b;
    if (b < end && clause_starting_at(s, b, end)) {
      pred_end = k;
      next_clause = b;
      break;
    }
  }

  // Predicate conjuncts.
  std::vector<Predicate> predicates;
  predicates.push_back({words_of(s, first->begin, first->end), {}});
  Span rest(s.begin() + static_cast<std::ptrdiff_t>(first->end), s.begin() + static_cast<std::ptrdiff_t>(pred_end));
  // Unless the rest opens with a connective, its first segment is the object
  // of the verb group just read.
  bool first_segment = !rest.empty() && rest[0].kind != Kind::Comma && !is_connective_word(rest[0]) &&
                       rest[0].lower != "as";
  for (const auto& seg : split_conjuncts(rest, 0, rest.size())) {
    std::optional<VerbGroup> vg;
    if (!first_segment) vg = parse_verb_group(seg, 0, predicates.back().objects.empty());
    if (!first_segment && vg && vg->end > 0) {
      predicates.push_back({words_of(seg, 0, vg->end), {}});
      auto obj = object_words(seg, vg->end);
      if (!obj.empty()) predicates.back().objects.push_back(std::move(obj));
    } else {
      auto obj = object_words(seg, 0);
      if (!obj.empty()) predicates.back().objects.push_back(std::move(obj));
    }
    first_segment = false;
  }
  // Verb-only predicates share the objects of the next predicate that has some.
  for (size_t p = predicates.size(); p-- > 0;) {
    if (predicates[p].objects.empty() && p + 1 < predicates.size()) predicates[p].objects = predicates[p + 1].objects;
  }

  for (const auto& subject : subjects) {
    for (const auto& pred : predicates) {
      if (pred.action.empty()) continue;
      if (pred.objects.empty()) {
        out.push_back({sentence.doc_id, sentence.index, subject, pred.action, {}});
        continue;
      }
      for (const auto& obj : pred.objects) out.push_back({sentence.doc_id, sentence.index, subject, pred.action, obj});
    }
  }

  if (next_clause) parse_clause(s, *next_clause, end, inherited, sentence, out, diagnostics);
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view txt, std::string_view doc_id) {
  std::vector<Sentence> out;
  size_t start = 0;
  auto emit = [&](size_t end) {
    auto body = text::trim(txt.substr(start, end - start));
    if (!body.empty()) out.push_back({std::string(doc_id), out.size(), std::string(body)});
    start = end;
  };
  for (size_t i = 0; i < txt.size(); ++i) {
    const char c = txt[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // Closing quotes/brackets may trail the terminator.
    size_t j = i + 1;
    while (j < txt.size() && (txt[j] == '"' || txt[j] == ')' || txt[j] == '\'')) ++j;
    size_t k = j;
    while (k < txt.size() && (txt[k] == ' ' || txt[k] == '\t' || txt[k] == '\n' || txt[k] == '\r')) ++k;
    if (k < txt.size() && (k == j || !(text::is_upper(txt[k]) || txt[k] == '"' || txt[k] == '('))) continue;

    if (c == '.') {
      size_t w = i;
      while (w > start && txt[w - 1] != ' ' && txt[w - 1] != '\t' && txt[w - 1] != '\n') --w;
      const auto word = txt.substr(w, i + 1 - w);
      if (k < txt.size() && (is_initials(word) || kSentenceAbbreviations.count(word))) continue;
    }
    emit(j);
    i = j - 1;
  }
  emit(txt.size());
  return out;
}

std::vector<RoleMention> extract_mentions(const Sentence& sentence, std::vector<Diagnostic>* diagnostics) {
  const auto tokens = tokenize(sentence.text);
  std::vector<RoleMention> out;
  std::vector<std::string> inherited;
  size_t begin = 0;
  for (size_t i = 0; i <= tokens.size(); ++i) {
    if (i < tokens.size() && tokens[i].kind != Kind::Semicolon && tokens[i].kind != Kind::Colon &&
        tokens[i].kind != Kind::Stop) {
      continue;
    }
    if (i > begin) parse_clause(tokens, begin, i, inherited, sentence, out, diagnostics);
    begin = i + 1;
  }
  return out;
}

bool contains_in_order(const std::vector<std::string>& longer, const std::vector<std::string>& shorter) {
  size_t j = 0;
  for (size_t i = 0; i < longer.size() && j < shorter.size(); ++i) {
    if (longer[i] == shorter[j]) ++j;
  }
  return j == shorter.size();
}

std::vector<RoleMention> remove_redundant(const std::vector<RoleMention>& mentions) {
  auto covers = [](const RoleMention& t, const RoleMention& u) {
    return t.subject == u.subject && contains_in_order(t.action, u.action) && contains_in_order(t.object, u.object);
  };
  auto same = [](const RoleMention& a, const RoleMention& b) {
    return a.subject == b.subject && a.action == b.action && a.object == b.object;
  };
  // Containment is a partial order, so the survivors are its maximal
  // elements with duplicates collapsed onto the earliest copy.
  std::vector<RoleMention> out;
  for (size_t i = 0; i < mentions.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < mentions.size() && !dominated; ++j) {
      if (i == j || !covers(mentions[j], mentions[i])) continue;
      dominated = !same(mentions[i], mentions[j]) || j < i;
    }
    if (!dominated) out.push_back(mentions[i]);
  }
  return out;
}

bool is_group_subject(std::string_view subject) { return is_group_phrase(text::to_lower_ascii(text::collapse_ws(subject))); }

std::vector<std::string> individual_subjects(const std::vector<RoleMention>& mentions) {
  std::vector<std::string> out;
  for (const auto& m : mentions) {
    if (is_group_subject(m.subject) || kPronouns.count(text::to_lower_ascii(m.subject))) continue;
    if (std::find(out.begin(), out.end(), m.subject) == out.end()) out.push_back(m.subject);
  }
  return out;
}

std::vector<RoleMention> expand_group_subjects(const std::vector<RoleMention>& mentions,
                                               const std::vector<std::string>& authors) {
  std::vector<RoleMention> out;
  for (const auto& m : mentions) {
    if (!is_group_subject(m.subject) || authors.empty()) {
      out.push_back(m);
      continue;
    }
    for (const auto& a : authors) {
      auto copy = m;
      copy.subject = a;
      out.push_back(std::move(copy));
    }
  }
  return out;
}

std::vector<RoleMention> extract_document_mentions(const Document& doc, std::vector<Diagnostic>* diagnostics) {
  std::vector<RoleMention> all;
  for (const auto& sentence : split_sentences(doc.contrib_text, doc.doc_id)) {
    auto found = extract_mentions(sentence, diagnostics);
    all.insert(all.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  return remove_redundant(all);
}

}  // namespace rolemine
