#include <doctest.h>

#include "oracles.hpp"
#include "rolemine/mentions.hpp"
#include "rolemine/text.hpp"
#include "support.hpp"

using namespace rolemine;
using test::rm;

namespace {

using Tuple = std::tuple<std::string, std::string, std::string>;

std::vector<Tuple> tuples(std::string_view sentence) {
  std::vector<Tuple> out;
  for (const auto& m : extract_mentions(Sentence{"d", 0, std::string(sentence)})) {
    out.emplace_back(m.subject, text::join(m.action, " "), text::join(m.object, " "));
  }
  return out;
}

std::vector<RoleMention> random_mentions(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"read", "final", "manuscript", "draft", "study", "design"};
  static const std::vector<std::string> subjects = {"AB", "CD", "EF"};
  const size_t n = uniform_below(rng, 9);
  const size_t alphabet = 2 + uniform_below(rng, words.size() - 1);
  std::vector<RoleMention> out;
  for (size_t i = 0; i < n; ++i) {
    RoleMention m;
    m.doc_id = "d";
    m.sentence_index = i / 2;
    m.subject = subjects[uniform_below(rng, 1 + uniform_below(rng, subjects.size()))];
    const size_t na = 1 + uniform_below(rng, 2);
    for (size_t k = 0; k < na; ++k) m.action.push_back(words[uniform_below(rng, alphabet)]);
    const size_t no = uniform_below(rng, 4);
    for (size_t k = 0; k < no; ++k) m.object.push_back(words[uniform_below(rng, alphabet)]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("split_sentences") {
  const auto text = read_file(test::data_dir() / "sample_section.txt");
  const auto s = split_sentences(text, "sample");
  REQUIRE(s.size() == 4);
  CHECK(s[3].text == "All authors read and approved the final manuscript.");
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].index == i);
    CHECK(s[i].doc_id == "sample");
  }
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("J.B. approved the draft.").size() == 1);
  CHECK(split_sentences("AB did X, e.g. this. CD did Y.").size() == 2);
}

TEST_CASE("extract_mentions: conjoined predicates") {
  CHECK(tuples("AWL did the literature search and participated in the writing of the manuscript.") ==
        std::vector<Tuple>{{"AWL", "did", "literature search"}, {"AWL", "participated in", "writing of manuscript"}});
}

TEST_CASE("extract_mentions: conjoined verbs share the object") {
  CHECK(tuples("All authors read and approved the final manuscript.") ==
        std::vector<Tuple>{{"All authors", "read", "final manuscript"}, {"All authors", "approved", "final manuscript"}});
}

TEST_CASE("extract_mentions: subject lists distribute") {
  CHECK(tuples("AJ-M and MN-M drafted the manuscript.") ==
        std::vector<Tuple>{{"AJ-M", "drafted", "manuscript"}, {"MN-M", "drafted", "manuscript"}});
  const auto t = tuples("AJ-M, HT, YS and RS carried out the IHC analysis.");
  REQUIRE(t.size() == 4);
  CHECK(std::get<0>(t[3]) == "RS");
  CHECK(std::get<1>(t[3]) == "carried out");
}

TEST_CASE("extract_mentions: other subject shapes") {
  CHECK(tuples("J.B. approved the draft.") == std::vector<Tuple>{{"J.B.", "approved", "draft"}});
  CHECK(tuples("He was involved in the design of the study.") ==
        std::vector<Tuple>{{"He", "was involved in", "design of study"}});
  CHECK(tuples("John Smith and Mary Jones took part in writing the manuscript.").size() == 2);
}

TEST_CASE("extract_mentions: no verb group gives a diagnostic") {
  std::vector<Diagnostic> diags;
  CHECK(extract_mentions(Sentence{"d", 0, "The authors declare no competing interests."}, &diags).empty());
  CHECK(diags.size() == 1);
}

TEST_CASE("extract_mentions never emits an empty subject or action") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {"AB",  "and", "CD", ",",      "drafted", "the",   "manuscript", "read",
                                           "All", "authors", "of", "study", "carried", "out", "J.B.", "designed"};
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const auto n = 1 + uniform_below(rng, 10);
    for (uint64_t k = 0; k < n; ++k) s += pieces[uniform_below(rng, pieces.size())] + " ";
    s += ".";
    for (const auto& m : extract_mentions(Sentence{"d", 0, s})) {
      CHECK_FALSE(m.subject.empty());
      CHECK_FALSE(m.action.empty());
    }
  }
}

TEST_CASE("contains_in_order") {
  CHECK(contains_in_order({"writing", "of", "manuscript"}, {"writing", "manuscript"}));
  CHECK_FALSE(contains_in_order({"writing", "of", "manuscript"}, {"manuscript", "writing"}));
  CHECK(contains_in_order({"a"}, {}));
  CHECK_FALSE(contains_in_order({}, {"a"}));
}

TEST_CASE("remove_redundant examples") {
  const auto long_one = rm("authors", {"read"}, {"final", "manuscript"});
  const auto short_one = rm("authors", {"read"}, {"manuscript"});
  CHECK(remove_redundant({short_one, long_one}) == std::vector<RoleMention>{long_one});
  const std::vector<RoleMention> distinct = {rm("A", {"read"}, {"paper"}), rm("B", {"read"}, {"paper"})};
  CHECK(remove_redundant(distinct) == distinct);
  const auto dup = rm("A", {"read"}, {"paper"}, 3);
  CHECK(remove_redundant({rm("A", {"read"}, {"paper"}, 1), dup}).size() == 1);
  CHECK(remove_redundant({rm("A", {"read"}, {"paper"}, 1), dup})[0].sentence_index == 1);
}

TEST_CASE("remove_redundant properties") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const auto in = random_mentions(rng);
    const auto out = remove_redundant(in);
    CHECK(out == oracle::remove_redundant(in));
    CHECK(remove_redundant(out) == out);
    for (const auto& m : out) CHECK(std::find(in.begin(), in.end(), m) != in.end());
    for (size_t a = 0; a < out.size(); ++a) {
      for (size_t b = 0; b < out.size(); ++b) {
        if (a != b) CHECK_FALSE(oracle::covers(out[a], out[b]));
      }
    }
  }
}

TEST_CASE("group subjects") {
  CHECK(is_group_subject("All authors"));
  CHECK(is_group_subject("Both authors"));
  CHECK_FALSE(is_group_subject("AJ-M"));
  const std::vector<RoleMention> ms = {rm("AB", {"drafted"}, {"manuscript"}),
                                       rm("All authors", {"read"}, {"manuscript"}, 1),
                                       rm("CD", {"designed"}, {"study"}, 2)};
  const auto authors = individual_subjects(ms);
  CHECK(authors == std::vector<std::string>{"AB", "CD"});
  const auto expanded = expand_group_subjects(ms, authors);
  REQUIRE(expanded.size() == 4);
  CHECK(expanded[1].subject == "AB");
  CHECK(expanded[2].subject == "CD");
  CHECK(expanded[2].action == std::vector<std::string>{"read"});
}

TEST_CASE("extract_document_mentions on the sample section") {
  Document d{"sample", "", read_file(test::data_dir() / "sample_section.txt"), false};
  const auto ms = extract_document_mentions(d);
  std::set<std::string> subjects;
  for (const auto& m : ms) subjects.insert(m.subject);
  CHECK(subjects == std::set<std::string>{"AJ-M", "AM", "All authors", "HT", "MN-M", "MPU", "RS", "V-MK", "YS"});
}
