#include <doctest.h>

#include "rolemine/curation.hpp"
#include "rolemine/error.hpp"
#include "support.hpp"

using namespace rolemine;
using test::nm;

namespace {

ClusterState fixture_state() {
  std::vector<NormalizedMention> ms;
  for (int i = 0; i < 5; ++i) ms.push_back(nm({"draft"}, {"manuscript"}));
  for (int i = 0; i < 5; ++i) ms.push_back(nm({"perform"}, {"analys"}));
  for (int i = 0; i < 3; ++i) ms.push_back(nm({"perform"}, {"statist"}));
  for (int i = 0; i < 2; ++i) ms.push_back(nm({"read"}, {"final"}));
  return init_clusters(ms);
}

std::string role_id(const RoleSet& rs, const std::string& name) {
  for (const auto& r : rs.roles) {
    if (r.name == name) return r.id;
  }
  return {};
}

CurationOp op(CurationOp::Kind k, std::string a, std::string b = {}, std::string name = {}) {
  CurationOp o;
  o.kind = k;
  o.a = std::move(a);
  o.b = std::move(b);
  o.name = std::move(name);
  return o;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::StateCorrupt;
}

}  // namespace

TEST_CASE("initial role set has one role per role cluster") {
  const auto st = fixture_state();
  const auto rs = initial_roleset(st);
  CHECK(rs.roles.size() == 4);
  CHECK(rs.roles[0].members.size() == 5);
  CHECK(!role_id(rs, "draft / manuscript").empty());
  CHECK(!role_id(rs, "perform / analys").empty());
  size_t total = 0;
  for (const auto& r : rs.roles) total += r.members.size();
  CHECK(total == st.mentions.size());
}

TEST_CASE("merge, remove, rename") {
  const auto st = fixture_state();
  auto rs = initial_roleset(st);
  const auto analys = role_id(rs, "perform / analys");
  const auto statist = role_id(rs, "perform / statist");
  const auto read = role_id(rs, "read / final");

  apply_op(rs, st, op(CurationOp::Kind::Merge, analys, statist));
  REQUIRE(rs.find(analys));
  CHECK(rs.find(analys)->members.size() == 8);
  CHECK(rs.find(statist) == nullptr);
  CHECK(rs.find(analys)->source_pairs.size() == 2);

  apply_op(rs, st, op(CurationOp::Kind::Remove, read));
  CHECK(rs.find(read) == nullptr);
  CHECK(rs.removed == std::vector<std::string>{read});

  apply_op(rs, st, op(CurationOp::Kind::Rename, analys, {}, "Analysis"));
  CHECK(rs.find(analys)->name == "Analysis");
  CHECK(rs.log.size() == 3);

  const auto training = build_training_set(rs, st.mentions);
  CHECK(training.size() == 13);
  for (const auto& ex : training) {
    CHECK(ex.role != "read / final");
    CHECK(ex.mention.action_terms != std::vector<std::string>{"read"});
  }
}

TEST_CASE("curation errors") {
  const auto st = fixture_state();
  auto rs = initial_roleset(st);
  const auto draft = role_id(rs, "draft / manuscript");
  const auto analys = role_id(rs, "perform / analys");
  CHECK(code_of([&] { apply_op(rs, st, op(CurationOp::Kind::Merge, draft, "r-nope")); }) == ErrorCode::UnknownRole);
  CHECK(code_of([&] { apply_op(rs, st, op(CurationOp::Kind::Remove, "r-nope")); }) == ErrorCode::UnknownRole);
  apply_op(rs, st, op(CurationOp::Kind::Rename, draft, {}, "Paper drafting"));
  CHECK(code_of([&] { apply_op(rs, st, op(CurationOp::Kind::Rename, analys, {}, "Paper drafting")); }) ==
        ErrorCode::NameCollision);
  // renaming to the current name is fine
  apply_op(rs, st, op(CurationOp::Kind::Rename, draft, {}, "Paper drafting"));
  apply_op(rs, st, op(CurationOp::Kind::Remove, analys));
  CHECK(code_of([&] { apply_op(rs, st, op(CurationOp::Kind::Rename, analys, {}, "x")); }) == ErrorCode::UnknownRole);
}

TEST_CASE("pins resolve to label bags") {
  const auto st = fixture_state();
  auto rs = initial_roleset(st);
  const auto analys = role_id(rs, "perform / analys");
  const auto draft = role_id(rs, "draft / manuscript");
  apply_op(rs, st, op(CurationOp::Kind::Pin, analys, draft));
  CHECK(rs.pins.size() == 2);
  CHECK(rs.log.back().pins == rs.pins);
  const auto pins = collect_pins(rs.log);
  CHECK(std::find(pins.begin(), pins.end(), Pin{Side::Action, {"draft"}, {"perform"}}) != pins.end());
  CHECK(std::find(pins.begin(), pins.end(), Pin{Side::Object, {"analys"}, {"manuscript"}}) != pins.end());

  // cluster ids pin a single side
  const auto& a0 = st.action_clusters[0];
  const auto& a1 = st.action_clusters[1];
  auto rs2 = initial_roleset(st);
  apply_op(rs2, st, op(CurationOp::Kind::Pin, a0.id, a1.id));
  CHECK(rs2.pins.size() == 1);
  CHECK(rs2.pins[0].side == Side::Action);
  CHECK(code_of([&] { apply_op(rs2, st, op(CurationOp::Kind::Pin, a0.id, st.object_clusters[0].id)); }) ==
        ErrorCode::ConfigInvalid);
}

TEST_CASE("replaying the log reproduces the role set") {
  const auto st = fixture_state();
  auto rs = initial_roleset(st);
  const auto analys = role_id(rs, "perform / analys");
  apply_op(rs, st, op(CurationOp::Kind::Merge, analys, role_id(rs, "perform / statist")));
  apply_op(rs, st, op(CurationOp::Kind::Rename, analys, {}, "Analysis"));
  apply_op(rs, st, op(CurationOp::Kind::Pin, analys, role_id(rs, "draft / manuscript")));
  apply_op(rs, st, op(CurationOp::Kind::Remove, role_id(rs, "read / final")));
  CHECK(apply_curation(st, rs.log) == rs);
}

TEST_CASE("role names stay unique and member sets disjoint under random curation") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    const auto ms = test::random_keyword_mentions(rng, 30, 4, 4);
    const auto st = init_clusters(ms);
    auto rs = initial_roleset(st);
    for (int k = 0; k < 10 && rs.roles.size() > 1; ++k) {
      const auto& a = rs.roles[uniform_below(rng, rs.roles.size())].id;
      const auto& b = rs.roles[uniform_below(rng, rs.roles.size())].id;
      const auto kind = static_cast<CurationOp::Kind>(uniform_below(rng, 4));
      try {
        apply_op(rs, st, op(kind, a, b, "n" + std::to_string(uniform_below(rng, 4))));
      } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::NameCollision || e.code() == ErrorCode::ConfigInvalid));
      }
    }
    std::set<std::string> names;
    std::set<size_t> members;
    size_t total = 0;
    for (const auto& r : rs.roles) {
      CHECK(names.insert(r.name).second);
      for (auto m : r.members) members.insert(m);
      total += r.members.size();
    }
    CHECK(members.size() == total);
    CHECK(apply_curation(st, rs.log) == rs);
  }
}

TEST_CASE("training set") {
  const auto st = fixture_state();
  const auto rs = initial_roleset(st);
  const auto t = build_training_set(rs, st.mentions);
  CHECK(t.size() == st.mentions.size());
  RoleSet empty;
  CHECK(code_of([&] { (void)build_training_set(empty, st.mentions); }) == ErrorCode::EmptyTrainingSet);
  auto bad = rs;
  bad.roles[0].members.push_back(999);
  CHECK(code_of([&] { (void)build_training_set(bad, st.mentions); }) == ErrorCode::StateCorrupt);
}

TEST_CASE("bundled taxonomy") {
  const auto rs = json::parse(read_file(test::data_dir() / "roleset.json")).get<RoleSet>();
  std::set<std::string> names;
  for (const auto& r : rs.roles) names.insert(r.name);
  CHECK(names == std::set<std::string>{"Analysis", "Conceptualization", "Coordination", "Data collection",
                                       "Experimenting", "Interpretation", "Literature review", "Paper drafting",
                                       "Paper reading", "Paper review", "Paper revision", "Paper writing",
                                       "Study design"});
}
