#include "rolemine/stemmer.hpp"

#include <array>
#include <utility>

namespace rolemine {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_vowel_wxy(char c) { return is_vowel(c) || c == 'w' || c == 'x' || c == 'Y'; }

bool is_valid_li(char c) {
  switch (c) {
    case 'c': case 'd': case 'e': case 'g': case 'h':
    case 'k': case 'm': case 'n': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() && std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

bool has_vowel_before(const std::string& w, size_t end) {
  for (size_t i = 0; i < end; ++i) {
    if (is_vowel(w[i])) return true;
  }
  return false;
}

// Short syllable ending at `end`.
bool short_syllable(const std::string& w, size_t end) {
  if (end >= 3 && !is_vowel_wxy(w[end - 1]) && is_vowel(w[end - 2]) && !is_vowel(w[end - 3])) return true;
  if (end == 2 && !is_vowel(w[1]) && is_vowel(w[0])) return true;
  return end >= 4 && std::string_view(w).substr(end - 4, 4) == "past";
}

struct Word {
  std::string w;
  size_t p1 = 0;
  size_t p2 = 0;
  bool y_found = false;

  // Longest suffix from `table` that `w` ends with; returns its index or -1.
  template <size_t N>
  int longest(const std::array<std::string_view, N>& table) const {
    int best = -1;
    size_t best_len = 0;
    for (size_t i = 0; i < N; ++i) {
      if (table[i].size() > best_len && ends_with(w, table[i])) {
        best = static_cast<int>(i);
        best_len = table[i].size();
      }
    }
    return best;
  }

  void replace_suffix(size_t suffix_len, std::string_view with) {
    w.resize(w.size() - suffix_len);
    w.append(with);
  }

  void prelude() {
    if (!w.empty() && w[0] == '\'') w.erase(0, 1);
    if (!w.empty() && w[0] == 'y') {
      w[0] = 'Y';
      y_found = true;
    }
    for (size_t i = 1; i < w.size(); ++i) {
      if (w[i] == 'y' && is_vowel(w[i - 1])) {
        w[i] = 'Y';
        y_found = true;
      }
    }
  }

  // Position just past the first non-vowel that follows a vowel, searching from `from`.
  size_t region_after(size_t from) const {
    size_t i = from;
    while (i < w.size() && !is_vowel(w[i])) ++i;
    if (i >= w.size()) return w.size();
    ++i;
    while (i < w.size() && is_vowel(w[i])) ++i;
    if (i >= w.size()) return w.size();
    return i + 1;
  }

  void mark_regions() {
    static constexpr std::array<std::string_view, 9> prefixes = {
        "arsen", "commun", "emerg", "gener", "inter", "later", "organ", "past", "univers"};
    size_t prefix_len = 0;
    for (auto p : prefixes) {
      if (p.size() > prefix_len && std::string_view(w).substr(0, p.size()) == p) prefix_len = p.size();
    }
    p1 = prefix_len ? prefix_len : region_after(0);
    p2 = p1 >= w.size() ? w.size() : region_after(p1);
  }

  void step_1a() {
    if (ends_with(w, "'s'")) {
      w.resize(w.size() - 3);
    } else if (ends_with(w, "'s")) {
      w.resize(w.size() - 2);
    } else if (ends_with(w, "'")) {
      w.resize(w.size() - 1);
    }

    if (ends_with(w, "sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
      replace_suffix(3, w.size() - 3 >= 2 ? "i" : "ie");
    } else if (ends_with(w, "ss") || ends_with(w, "us")) {
      // unchanged
    } else if (ends_with(w, "s")) {
      const size_t start = w.size() - 1;
      if (start >= 1 && has_vowel_before(w, start - 1)) w.pop_back();
    }
  }

  void step_1b() {
    static constexpr std::array<std::string_view, 6> suffixes = {"eedly", "ingly", "edly", "eed", "ing", "ed"};
    const int hit = longest(suffixes);
    if (hit < 0) return;
    const std::string_view suffix = suffixes[static_cast<size_t>(hit)];
    const size_t start = w.size() - suffix.size();

    if (suffix == "eedly" || suffix == "eed") {
      if (start < p1) return;
      const std::string_view stemmed = std::string_view(w).substr(0, start);
      if (stemmed == "succ" || stemmed == "proc" || stemmed == "exc") return;
      replace_suffix(suffix.size(), "ee");
      return;
    }

    if (suffix == "ing") {
      const std::string prefix = w.substr(0, start);
      static constexpr std::array<std::string_view, 6> keep = {"even", "cann", "inn", "earr", "herr", "out"};
      std::string_view matched;
      for (auto k : keep) {
        if (k.size() > matched.size() && ends_with(prefix, k)) matched = k;
      }
      if (!matched.empty()) {
        if (prefix == matched) return;
      } else if (ends_with(prefix, "y")) {
        if (prefix.size() == 2 && !is_vowel(prefix[0])) {
          w = prefix.substr(0, 1) + "ie";
          return;
        }
      }
    }

    if (!has_vowel_before(w, start)) return;
    w.resize(start);

    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
      w.push_back('e');
      return;
    }
    static constexpr std::array<std::string_view, 9> doubles = {"bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"};
    for (auto d : doubles) {
      if (ends_with(w, d)) {
        if (w.size() == 3 && (w[0] == 'a' || w[0] == 'e' || w[0] == 'o')) return;
        w.pop_back();
        return;
      }
    }
    if (w.size() != p1) return;
    if (short_syllable(w, w.size())) w.push_back('e');
  }

  void step_1c() {
    const size_t n = w.size();
    if (n < 3) return;
    if (w[n - 1] != 'y' && w[n - 1] != 'Y') return;
    if (is_vowel(w[n - 2])) return;
    w[n - 1] = 'i';
  }

  void step_2() {
    static constexpr std::array<std::string_view, 25> suffixes = {
        "tional", "enci", "anci", "abli", "entli", "izer", "ization", "ational", "ation",
        "ator", "alism", "aliti", "alli", "fulness", "ousli", "ousness", "iveness", "iviti",
        "biliti", "bli", "ogist", "ogi", "fulli", "lessli", "li"};
    static constexpr std::array<std::string_view, 25> replacements = {
        "tion", "ence", "ance", "able", "ent", "ize", "ize", "ate", "ate",
        "ate", "al", "al", "al", "ful", "ous", "ous", "ive", "ive",
        "ble", "ble", "og", "og", "ful", "less", ""};
    const int hit = longest(suffixes);
    if (hit < 0) return;
    const auto i = static_cast<size_t>(hit);
    const size_t start = w.size() - suffixes[i].size();
    if (start < p1) return;
    if (suffixes[i] == "ogi") {
      if (start == 0 || w[start - 1] != 'l') return;
    } else if (suffixes[i] == "li") {
      if (start == 0 || !is_valid_li(w[start - 1])) return;
    }
    replace_suffix(suffixes[i].size(), replacements[i]);
  }

  void step_3() {
    static constexpr std::array<std::string_view, 9> suffixes = {
        "tional", "ational", "alize", "icate", "iciti", "ical", "ful", "ness", "ative"};
    static constexpr std::array<std::string_view, 9> replacements = {
        "tion", "ate", "al", "ic", "ic", "ic", "", "", ""};
    const int hit = longest(suffixes);
    if (hit < 0) return;
    const auto i = static_cast<size_t>(hit);
    const size_t start = w.size() - suffixes[i].size();
    if (start < p1) return;
    if (suffixes[i] == "ative" && start < p2) return;
    replace_suffix(suffixes[i].size(), replacements[i]);
  }

  void step_4() {
    static constexpr std::array<std::string_view, 18> suffixes = {
        "ic", "ance", "ence", "able", "ible", "ate", "ive", "ize", "iti",
        "al", "ism", "ion", "er", "ous", "ant", "ent", "ment", "ement"};
    const int hit = longest(suffixes);
    if (hit < 0) return;
    const auto i = static_cast<size_t>(hit);
    const size_t start = w.size() - suffixes[i].size();
    if (start < p2) return;
    if (suffixes[i] == "ion") {
      if (start == 0 || (w[start - 1] != 's' && w[start - 1] != 't')) return;
    }
    w.resize(start);
  }

  void step_5() {
    if (w.empty()) return;
    const size_t start = w.size() - 1;
    if (w.back() == 'e') {
      if (start >= p2 || (start >= p1 && !short_syllable(w, start))) w.pop_back();
    } else if (w.back() == 'l') {
      if (start >= p2 && start >= 1 && w[start - 1] == 'l') w.pop_back();
    }
  }

  void postlude() {
    if (!y_found) return;
    for (auto& c : w) {
      if (c == 'Y') c = 'y';
    }
  }
};

bool exception1(std::string_view word, std::string& out) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 15> table = {{
      {"skis", "ski"}, {"skies", "sky"}, {"idly", "idl"}, {"gently", "gentl"},
      {"ugly", "ugli"}, {"early", "earli"}, {"only", "onli"}, {"singly", "singl"},
      {"sky", "sky"}, {"news", "news"}, {"howe", "howe"}, {"atlas", "atlas"},
      {"cosmos", "cosmos"}, {"bias", "bias"}, {"andes", "andes"},
  }};
  for (const auto& [from, to] : table) {
    if (word == from) {
      out = to;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string stem(std::string_view word) {
  std::string special;
  if (exception1(word, special)) return special;
  if (word.size() < 3) return std::string(word);

  Word s;
  s.w = std::string(word);
  s.prelude();
  s.mark_regions();
  s.step_1a();
  s.step_1b();
  s.step_1c();
  s.step_2();
  s.step_3();
  s.step_4();
  s.step_5();
  s.postlude();
  return s.w;
}

}  // namespace rolemine
