#include <doctest.h>

#include "oracles.hpp"
#include "rolemine/error.hpp"
#include "rolemine/evaluate.hpp"
#include "support.hpp"

using namespace rolemine;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::StateCorrupt;
}

PairsByDoc random_pairs(std::mt19937_64& rng) {
  static const std::vector<std::string> subjects{"AB", "a.b.", "CD", "EF", "All authors"};
  static const std::vector<std::string> roles{"Analysis", "Paper drafting", "Study design", "Paper reading"};
  PairsByDoc out;
  const size_t docs = uniform_below(rng, 5);
  for (size_t d = 0; d < docs; ++d) {
    auto& s = out["d" + std::to_string(uniform_below(rng, 4))];
    const size_t n = uniform_below(rng, 5);
    for (size_t i = 0; i < n; ++i) {
      s.insert({subjects[uniform_below(rng, subjects.size())], roles[uniform_below(rng, roles.size())]});
    }
  }
  return out;
}

// The oracle compares literal strings, so feed it normalized subjects.
std::map<std::string, std::set<std::pair<std::string, std::string>>> normalized(const PairsByDoc& p) {
  std::map<std::string, std::set<std::pair<std::string, std::string>>> out;
  for (const auto& [d, s] : p) {
    auto& o = out[d];
    for (const auto& [subj, role] : s) o.insert({normalize_subject(subj), role});
  }
  return out;
}

}  // namespace

TEST_CASE("prf") {
  auto m = prf({1, 0, 0});
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);
  m = prf({1, 1, 1});
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 0.5);
  CHECK(m.f1 == 0.5);
  m = prf({0, 0, 0});
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);
  m = prf({0, 3, 2});
  CHECK(m.f1 == 0.0);
  CHECK(f1_score(0.71, 0.49) == doctest::Approx(0.5798).epsilon(1e-4));
  CHECK(std::abs(f1_score(0.71, 0.49) - 0.58) < 0.005);
}

TEST_CASE("F1 lies between precision and recall") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    RoleCounts c{uniform_below(rng, 20), uniform_below(rng, 20), uniform_below(rng, 20)};
    const auto m = prf(c);
    CHECK(m.precision >= 0.0);
    CHECK(m.precision <= 1.0);
    CHECK(m.recall >= 0.0);
    CHECK(m.recall <= 1.0);
    if (m.precision > 0 && m.recall > 0) {
      CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
      CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
    }
  }
}

TEST_CASE("subject normalization") {
  CHECK(normalize_subject("J. B.") == "j b");
  CHECK(normalize_subject("  AJ-M ") == "aj-m");
  CHECK(normalize_subject("All   Authors") == "all authors");
  CHECK(normalize_subject("ajm") != normalize_subject("AJ-M"));
}

TEST_CASE("exact match") {
  PairsByDoc p{{"d", {{"AJ-M", "Analysis"}}}};
  PairsByDoc g{{"d", {{"AJ-M", "Analysis"}}}};
  auto c = match_pairs(p, g);
  CHECK(c["Analysis"] == RoleCounts{1, 0, 0});

  p = {{"d", {{"ajm", "Analysis"}}}};
  c = match_pairs(p, g);
  CHECK(c["Analysis"] == RoleCounts{0, 1, 1});

  p = {{"d", {{"aj-m", "Analysis"}}}};
  CHECK(match_pairs(p, g)["Analysis"] == RoleCounts{1, 0, 0});

  // same pair in another document does not count
  p = {{"e", {{"AJ-M", "Analysis"}}}};
  CHECK(match_pairs(p, g)["Analysis"] == RoleCounts{0, 1, 1});
}

TEST_CASE("match_pairs agrees with set intersection and is symmetric") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 1000; ++round) {
    const auto p = random_pairs(rng);
    const auto g = random_pairs(rng);
    const auto got = match_pairs(p, g);
    const auto want = oracle::match_counts(normalized(p), normalized(g));
    for (const auto& [role, c] : want) {
      REQUIRE(got.count(role));
      CHECK(got.at(role) == RoleCounts{c[0], c[1], c[2]});
    }
    for (const auto& [role, c] : got) {
      if (!want.count(role)) CHECK(c == RoleCounts{});
    }
    const auto swapped = match_pairs(g, p);
    for (const auto& [role, c] : got) {
      const auto s = swapped.count(role) ? swapped.at(role) : RoleCounts{};
      CHECK(s.tp == c.tp);
      CHECK(s.fp == c.fn);
      CHECK(s.fn == c.fp);
    }
  }
}

TEST_CASE("report totals") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 200; ++round) {
    const auto p = random_pairs(rng);
    const auto g = random_pairs(rng);
    const auto rep = evaluate(p, g, {});
    size_t tp = 0, predicted = 0, gold = 0;
    for (const auto& [role, s] : rep.per_role) {
      tp += s.counts.tp;
      predicted += s.counts.tp + s.counts.fp;
      gold += s.counts.tp + s.counts.fn;
    }
    size_t np = 0, ng = 0;
    for (const auto& [d, s] : p) np += s.size();
    for (const auto& [d, s] : g) ng += s.size();
    CHECK(rep.totals.tp == tp);
    // normalization may fold two predicted subjects into one
    CHECK(predicted <= np);
    CHECK(gold <= ng);
  }
}

TEST_CASE("averages are unweighted over declared roles") {
  PairsByDoc p{{"d", {{"A", "x"}, {"B", "x"}, {"A", "y"}, {"C", "z"}}}};
  PairsByDoc g{{"d", {{"A", "x"}, {"A", "y"}, {"B", "y"}, {"C", "w"}}}};
  const auto rep = evaluate(p, g, {"x", "y"});
  // x: P 1/2 R 1; y: P 1 R 1/2
  CHECK(rep.averages.precision == doctest::Approx(0.75));
  CHECK(rep.averages.recall == doctest::Approx(0.75));
  CHECK(rep.averages.f1 == doctest::Approx(0.75));
  CHECK(!rep.per_role.at("z").scored);
  CHECK(!rep.per_role.at("w").scored);
  CHECK(rep.per_role.at("x").scored);
  const auto text = format_report(rep);
  CHECK(text.find("x") != std::string::npos);
}

TEST_CASE("error causes") {
  PairsByDoc g{{"d", {{"AB", "Analysis"}, {"CD", "Paper drafting"}, {"EF", "Supervision"}}}};
  PairsByDoc p{{"d", {{"AB", "Study design"}, {"GH", "Analysis"}}}};
  std::map<std::string, DocTrace> trace{{"d", DocTrace{{"AB", "GH", "EF"}}}};
  const auto e = classify_errors(p, g, trace, {"Analysis", "Paper drafting", "Study design"});
  // fn: AB/Analysis -> classification, CD -> extraction, EF/Supervision -> missing role
  // fp: AB/Study design -> classification, GH -> extraction
  CHECK(e.at(ErrorCause::Classification).recall_errors == 1);
  CHECK(e.at(ErrorCause::Classification).precision_errors == 1);
  CHECK(e.at(ErrorCause::MentionExtraction).recall_errors == 1);
  CHECK(e.at(ErrorCause::MentionExtraction).precision_errors == 1);
  CHECK(e.at(ErrorCause::MissingRole).recall_errors == 1);
  CHECK(e.at(ErrorCause::MissingRole).precision_errors == 0);

  CHECK(code_of([&] { (void)classify_errors(p, g, {}, {"Analysis"}); }) == ErrorCode::TraceUnavailable);
  // no errors, no trace needed
  CHECK_NOTHROW(classify_errors(g, g, {}, {}));

  const auto rep = evaluate(p, g, {}, nullptr);
  CHECK(!rep.errors);
}

TEST_CASE("gold grouping") {
  std::vector<GoldAnnotation> gold{{"d", {{"A", "x"}, {"A", "x"}}}, {"e", {}}, {"d", {{"B", "y"}}}};
  const auto by = gold_by_doc(gold);
  CHECK(by.at("d").size() == 2);
  CHECK(by.count("e"));
}
