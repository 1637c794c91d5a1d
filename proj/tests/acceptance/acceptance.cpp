// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fail.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "rolemine/classifier.hpp"
#include "rolemine/error.hpp"
#include "rolemine/evaluate.hpp"
#include "rolemine/pipeline.hpp"
#include "rolemine/synth.hpp"
#include "support.hpp"

using namespace rolemine;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<RoleMention> random_role_mentions(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"read", "final", "manuscript", "draft", "study", "design"};
  static const std::vector<std::string> subjects = {"AB", "CD", "EF"};
  const size_t n = uniform_below(rng, 9);
  const size_t alphabet = 1 + uniform_below(rng, words.size());
  std::vector<RoleMention> out;
  for (size_t i = 0; i < n; ++i) {
    RoleMention m;
    m.doc_id = "d";
    m.sentence_index = i / 2;
    m.subject = subjects[uniform_below(rng, 1 + uniform_below(rng, subjects.size()))];
    const size_t na = 1 + uniform_below(rng, 3);
    for (size_t k = 0; k < na; ++k) m.action.push_back(words[uniform_below(rng, alphabet)]);
    const size_t no = uniform_below(rng, 4);
    for (size_t k = 0; k < no; ++k) m.object.push_back(words[uniform_below(rng, alphabet)]);
    out.push_back(std::move(m));
  }
  return out;
}

Outcome redundancy_oracle() {
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  size_t agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto in = random_role_mentions(rng);
    agree += remove_redundant(in) == oracle::remove_redundant(in);
  }
  const double s = seconds_since(t0);
  return {agree == 1000 && s < 5.0, std::to_string(agree) + "/1000 agree in " + fmt("%.3f s", s)};
}

Outcome graph_oracle() {
  std::mt19937_64 rng(2002);
  size_t bad = 0;
  size_t max_clusters = 0;
  for (int round = 0; round < 200; ++round) {
    std::vector<NormalizedMention> ms;
    ClusterState st;
    do {  // at most 12 clusters a side
      ms = test::random_keyword_mentions(rng, 1 + uniform_below(rng, 60), 4, 4);
      const double th = std::array{0.25, 0.5, 1.0}[uniform_below(rng, 3)];
      st = uniform_below(rng, 2) ? cluster(ms, {th, {}}).state : init_clusters(ms);
    } while (st.action_clusters.size() > 12 || st.object_clusters.size() > 12);
    max_clusters = std::max({max_clusters, st.action_clusters.size(), st.object_clusters.size()});
    const auto g = build_role_graph(st);
    const auto o = oracle::graph_numbers(st);
    size_t sum = 0;
    for (size_t a = 0; a < st.action_clusters.size(); ++a) {
      for (size_t b = 0; b < st.object_clusters.size(); ++b) {
        bad += g.weight(a, b) != o.r[a][b];
        sum += o.r[a][b];
      }
      bad += std::abs(action_weight(g, a) - o.w_action[a]) > 1e-12;
      for (size_t a2 = 0; a2 < st.action_clusters.size(); ++a2) {
        if (a2 != a) bad += std::abs(action_similarity(g, a, a2) - o.s_action[a][a2]) > 1e-12;
      }
    }
    for (size_t b = 0; b < st.object_clusters.size(); ++b) {
      bad += std::abs(object_weight(g, b) - o.w_object[b]) > 1e-12;
      for (size_t b2 = 0; b2 < st.object_clusters.size(); ++b2) {
        if (b2 != b) bad += std::abs(object_similarity(g, b, b2) - o.s_object[b][b2]) > 1e-12;
      }
    }
    bad += sum != ms.size() || g.total_weight() != ms.size();
  }
  return {bad == 0, std::to_string(bad) + " mismatches over 200 states (max " + std::to_string(max_clusters) +
                        " clusters per side)"};
}

// rolegraph.json digest of the shipped synthetic corpus; the same on every platform
constexpr const char* kRecoveryDigest = "47ff0b38fb15dc0e";

Outcome clustering_recovery() {
  const auto ms = read_jsonl<NormalizedMention>(test::data_dir() / "synthetic_roles.jsonl");
  std::set<std::string> digests;
  size_t roles = 0;
  for (int run = 0; run < 10; ++run) {
    const auto res = cluster(ms, {0.5, {}});
    roles = role_cluster_count(res.state);
    if (roles != 4) return {false, "run " + std::to_string(run) + " gave " + std::to_string(roles) + " role clusters"};
    digests.insert(hex(fnv1a(rolegraph_to_json(res.state, 0.5, {}, res.merges).dump())));
  }
  const std::string d = *digests.begin();
  return {digests.size() == 1 && d == kRecoveryDigest,
          std::to_string(ms.size()) + " mentions -> 4 role clusters in 10/10 runs, digest " + d};
}

Outcome threshold_monotonicity() {
  std::mt19937_64 rng(4004);
  const std::vector<double> ths{0.1, 0.25, 0.5, 1.0, 2.0};
  size_t violations = 0;
  for (int c = 0; c < 50; ++c) {
    const auto ms = test::random_keyword_mentions(rng, 20 + uniform_below(rng, 60), 5, 5);
    size_t prev = 0;
    for (double th : ths) {
      const size_t n = role_cluster_count(cluster(ms, {th, {}}).state);
      violations += n < prev;
      prev = n;
    }
  }
  return {violations == 0, std::to_string(violations) + " decreases over 50 corpora x 5 thresholds"};
}

Outcome f1_consistency() {
  const double f = f1_score(0.71, 0.49);
  return {std::abs(f - 0.580) <= 0.005, "F1(0.71, 0.49) = " + fmt("%.4f", f)};
}

Outcome null_rule() {
  const auto kw = test::keyword_table();
  const auto model = test::bundled_model();
  std::vector<std::string> pool;
  for (const auto& e : kw.entries()) pool.push_back(e.stem);
  const std::vector<std::string> outside{"zzz", "foo", "bar", "quux", "blah", "meh"};
  std::mt19937_64 rng(6006);
  size_t agree = 0, nulls = 0;
  for (int i = 0; i < 10000; ++i) {
    auto pick = [&] {
      return uniform_below(rng, 3) == 0 ? pool[uniform_below(rng, pool.size())]
                                        : outside[uniform_below(rng, outside.size())];
    };
    std::vector<std::string> a, o;
    for (size_t k = 0, n = uniform_below(rng, 3); k < n; ++k) a.push_back(pick());
    for (size_t k = 0, n = uniform_below(rng, 4); k < n; ++k) o.push_back(pick());
    const auto m = test::nm(a, o);
    const bool zero = featurize(m, kw).all_zero();
    const bool null = !predict(model, m, kw).has_value();
    agree += zero == null;
    nulls += null;
  }
  return {agree == 10000, std::to_string(agree) + "/10000 agree (" + std::to_string(nulls) + " NULL)"};
}

Outcome nb_oracle() {
  auto lv = [](std::vector<uint8_t> b, std::string l) { return LabeledVector{FeatureVector{std::move(b)}, std::move(l)}; };
  const std::vector<LabeledVector> toy{lv({1, 0}, "x"), lv({1, 1}, "x"), lv({1, 0}, "x"), lv({0, 1}, "y"),
                                       lv({0, 0}, "y")};
  const auto m = train(toy, 2);
  double worst = 0;
  for (auto v : {std::vector<uint8_t>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    const auto want = oracle::nb_posterior(toy, FeatureVector{v}, 1.0);
    const auto got = posterior(m, FeatureVector{v});
    for (size_t c = 0; c < m.classes.size(); ++c) worst = std::max(worst, std::abs(got[c] - want.at(m.classes[c])));
  }

  // each class draws from its own keywords
  const auto kw = test::keyword_table();
  const std::vector<std::vector<std::string>> groups{
      {"draft", "write"}, {"coordin", "supervis"}, {"collect", "acquir"}, {"review", "revis"}, {"conceiv", "design"}};
  std::mt19937_64 rng(7007);
  std::vector<LabeledMention> data;
  for (int i = 0; i < 200; ++i) {
    const size_t g = uniform_below(rng, groups.size());
    std::vector<std::string> a{groups[g][uniform_below(rng, 2)]};
    if (uniform_below(rng, 2)) a.push_back(groups[g][uniform_below(rng, 2)]);
    data.push_back({test::nm(a, {}), "class" + std::to_string(g)});
  }
  const auto dm = train(data, kw);
  size_t correct = 0;
  for (const auto& e : data) correct += predict(dm, e.mention, kw) == e.role;
  const double acc = static_cast<double>(correct) / static_cast<double>(data.size());
  return {worst < 1e-9 && correct == data.size(),
          "max posterior error " + fmt("%.2e", worst) + ", disjoint training accuracy " + fmt("%.1f%%", 100 * acc)};
}

Outcome end_to_end_golden() {
  const auto res = extract_roles(read_file(test::data_dir() / "sample_section.txt"), test::bundled_model(), test::keyword_table());
  const auto golden = json::parse(read_file(fs::path(ROLEMINE_GOLDEN_DIR) / "sample_section_roles.json"));
  std::set<std::pair<std::string, std::string>> want;
  for (const auto& p : golden["pairs"]) want.emplace(p.at(0), p.at(1));
  const bool required = res.pairs.count({"AJ-M", "Analysis"}) && res.pairs.count({"MN-M", "Paper drafting"}) &&
                        res.pairs.count({"All authors", "Paper reading"});
  return {required && res.pairs == want,
          std::to_string(res.pairs.size()) + " pairs, golden " + (res.pairs == want ? "matches" : "differs")};
}

Outcome keyword_table_fidelity() {
  const auto kw = test::keyword_table();
  const auto fp = kw.fingerprint();
  return {kw.action_count() == 32 && kw.object_count() == 43 && fp == "370809abc6b439b0",
          std::to_string(kw.action_count()) + " action + " + std::to_string(kw.object_count()) +
              " object stems, fingerprint " + fp};
}

Outcome performance() {
  test::TempDir dir("perf");
  SynthOptions so;
  so.documents = 2000;
  so.seed = 11;
  so.no_section_rate = 0.0;
  const auto docs = synthesize(so);
  write_synthetic_corpus(docs, dir / "corpus", dir / "gold.jsonl");

  const auto t0 = Clock::now();
  auto c = PipelineConfig::parse("[paths]\ngold = \"gold.jsonl\"\n", dir.path());
  fs::create_directories(c.work_dir);
  json sections;
  for (auto s : {Stage::Ingest, Stage::Extract, Stage::Normalize, Stage::Discover}) {
    const auto r = run_stage(s, c);
    if (s == Stage::Ingest) sections = r.stats["sections_kept"];
  }
  // the curation an annotator would make, then the rest of the pipeline
  const auto state = load_discovery_state(c);
  const auto ops = synthetic_curation(state.state, initial_roleset(state.state), load_stopword_config(c),
                                      load_active_keywords(c));
  write_file_atomic(c.curation_path(), dump(json(ops)));
  for (auto s : {Stage::Discover, Stage::Train, Stage::Classify, Stage::Eval}) run_stage(s, c);
  const double s = seconds_since(t0);

  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  const double mb = static_cast<double>(ru.ru_maxrss) / 1024.0;
  const auto report = json::parse(read_file(c.artifact("report.json")));
  return {s < 60.0 && mb < 512.0, sections.dump() + " sections ingest->eval in " + fmt("%.2f s", s) + ", peak RSS " +
                                      fmt("%.0f MB", mb) + ", F1 " +
                                      fmt("%.3f", report["averages"]["f1"].get<double>())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"redundancy oracle", redundancy_oracle},
      {"graph math oracle", graph_oracle},
      {"clustering recovery", clustering_recovery},
      {"threshold monotonicity", threshold_monotonicity},
      {"F1 consistency", f1_consistency},
      {"NULL rule", null_rule},
      {"NB oracle", nb_oracle},
      {"end-to-end golden", end_to_end_golden},
      {"keyword table fidelity", keyword_table_fidelity},
      {"performance", performance},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
