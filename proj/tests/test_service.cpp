#include <doctest.h>

#include <fstream>
#include <thread>

#include <httplib.h>

#include "rolemine/error.hpp"
#include "rolemine/service.hpp"
#include "support.hpp"

using namespace rolemine;
using test::TempDir;
namespace fs = std::filesystem;

namespace {

// A discovered work directory over synthetic_roles.jsonl: 4 roles, no curation.
struct Workspace {
  TempDir dir{"svc"};
  PipelineConfig config;

  Workspace() {
    std::ofstream(dir / "config.toml") << "[paths]\nkeywords = \"" << (test::data_dir() / "keywords.json").string()
                                       << "\"\n";
    config = PipelineConfig::load(dir / "config.toml");
    fs::create_directories(config.work_dir);
    fs::copy_file(test::data_dir() / "synthetic_roles.jsonl", config.artifact("mentions.norm.jsonl"));
    run_discover(config);
  }
};

struct Running {
  CurationService& svc;
  int port;
  std::thread thread;

  Running(CurationService& s) : svc(s), port(s.bind("127.0.0.1", 0)), thread([this] { svc.listen_after_bind(); }) {
    svc.wait_until_ready();
  }
  ~Running() {
    svc.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

std::string id_named(const json& clusters, const std::string& name) {
  for (const auto& r : clusters["roles"]) {
    if (r["name"] == name) return r["id"];
  }
  return {};
}

}  // namespace

TEST_CASE("clusters, graph and mentions over HTTP") {
  Workspace ws;
  CurationService svc(ws.config);
  Running run(svc);
  auto cli = run.client();

  auto res = cli.Get("/api/v1/clusters");
  REQUIRE(res);
  CHECK(res->status == 200);
  const auto clusters = json::parse(res->body);
  REQUIRE(clusters["roles"].size() == 4);
  for (const auto& r : clusters["roles"]) {
    CHECK(r["id"].get<std::string>().rfind("r-", 0) == 0);
    CHECK(r["size"] == 10);
    CHECK(!r["name"].get<std::string>().empty());
  }
  CHECK(clusters["action_clusters"].size() == 4);

  res = cli.Get("/api/v1/graph");
  REQUIRE(res);
  const auto graph = json::parse(res->body);
  CHECK(graph["nodes"].size() == 8);
  CHECK(graph["edges"].size() == 4);
  CHECK(!graph["merges"].empty());

  const std::string rid = clusters["roles"][0]["id"];
  res = cli.Get("/api/v1/mentions?cluster=" + rid + "&offset=2&limit=3");
  REQUIRE(res);
  CHECK(res->status == 200);
  const auto page = json::parse(res->body);
  CHECK(page["total"] == 10);
  CHECK(page["mentions"].size() == 3);

  const std::string aid = clusters["action_clusters"][0]["id"];
  res = cli.Get("/api/v1/mentions?cluster=" + aid);
  REQUIRE(res);
  CHECK(json::parse(res->body)["mentions"].size() == 10);

  res = cli.Get("/api/v1/mentions?cluster=r-00000000");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["error"] == "UnknownRole");
  res = cli.Get("/api/v1/mentions");
  REQUIRE(res);
  CHECK(res->status == 400);
  res = cli.Get("/api/v1/mentions?cluster=" + rid + "&limit=x");
  REQUIRE(res);
  CHECK(res->status == 400);
}

TEST_CASE("curation over HTTP") {
  Workspace ws;
  CurationService svc(ws.config);
  Running run(svc);
  auto cli = run.client();
  const auto clusters = json::parse(cli.Get("/api/v1/clusters")->body);
  const std::string r1 = clusters["roles"][0]["id"];
  const std::string r2 = clusters["roles"][1]["id"];
  const std::string r3 = clusters["roles"][2]["id"];

  auto res = cli.Post("/api/v1/curation", json{{"op", "merge"}, {"a", r1}, {"b", r2}, {"op_id", "m1"}}.dump(),
                      "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["applied"] == 1);
  auto after = json::parse(cli.Get("/api/v1/clusters")->body);
  CHECK(after["roles"].size() == 3);
  CHECK(after["roles"][0]["size"] == 20);

  // retrying the same op_id is a no-op
  res = cli.Post("/api/v1/curation", json{{"op", "merge"}, {"a", r1}, {"b", r3}, {"op_id", "m1"}}.dump(),
                 "application/json");
  CHECK(json::parse(res->body)["duplicates"] == 1);
  CHECK(json::parse(cli.Get("/api/v1/clusters")->body)["roles"].size() == 3);

  res = cli.Post("/api/v1/curation", json{{"op", "rename"}, {"a", r1}, {"name", "Analysis"}}.dump(),
                 "application/json");
  CHECK(res->status == 200);
  CHECK(id_named(json::parse(cli.Get("/api/v1/clusters")->body), "Analysis") == r1);

  // batches are all-or-nothing
  res = cli.Post("/api/v1/curation",
                 json{{"ops", {{{"op", "remove"}, {"a", r3}}, {{"op", "rename"}, {"a", "r-00000000"}, {"name", "x"}}}}}
                     .dump(),
                 "application/json");
  CHECK(res->status == 404);
  CHECK(json::parse(cli.Get("/api/v1/clusters")->body)["roles"].size() == 3);

  res = cli.Post("/api/v1/curation", json{{"op", "rename"}, {"a", r3}, {"name", "Analysis"}}.dump(),
                 "application/json");
  CHECK(res->status == 409);
  res = cli.Post("/api/v1/curation", "{not json", "application/json");
  CHECK(res->status == 400);

  res = cli.Post("/api/v1/export", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const auto exported = json::parse(read_file(ws.config.roleset_path())).get<RoleSet>();
  const auto state = load_discovery_state(ws.config);
  CHECK(exported == apply_curation(state.state, load_curation(ws.config)));
  CHECK(load_curation(ws.config).size() == 2);
}

TEST_CASE("pins persist and hold on the next discovery") {
  Workspace ws;
  std::string a, b;
  {
    CurationService svc(ws.config);
    a = svc.roleset().roles[0].id;
    b = svc.roleset().roles[1].id;
    const auto out = svc.curate(json{{"op", "pin"}, {"a", a}, {"b", b}});
    CHECK(out["rediscover_required"] == true);
  }
  const auto ops = load_curation(ws.config);
  REQUIRE(ops.size() == 1);
  CHECK(ops[0].pins.size() == 2);
  run_discover(ws.config);
  const auto g = json::parse(read_file(ws.config.artifact("rolegraph.json")));
  CHECK(g["pins"].size() == 2);
  // a service restart sees the same role set
  CurationService again(ws.config);
  CHECK(again.roleset().roles.size() == 4);
  CHECK(again.roleset().pins.size() == 2);
}

TEST_CASE("a pin keeps two clusters apart") {
  TempDir dir("pin");
  std::ofstream(dir / "config.toml") << "[paths]\nkeywords = \"" << (test::data_dir() / "keywords.json").string()
                                     << "\"\n";
  auto config = PipelineConfig::load(dir / "config.toml");
  fs::create_directories(config.work_dir);
  // draft and write share both objects, so they merge unless pinned apart
  std::vector<NormalizedMention> ms;
  for (const char* v : {"draft", "write"}) {
    for (const char* o : {"manuscript", "paper"}) ms.push_back(test::nm({v}, {o}));
  }
  write_jsonl(config.artifact("mentions.norm.jsonl"), ms);
  run_discover(config);
  CHECK(load_discovery_state(config).state.action_clusters.size() == 1);

  // re-discover without the merge, pin the two action clusters, then re-run
  const auto init = init_clusters(ms);
  write_file_atomic(config.artifact("rolegraph.json"), dump(rolegraph_to_json(init, 0.5, {}, {})));
  {
    CurationService svc(config);
    svc.curate(json{{"op", "pin"}, {"a", init.action_clusters[0].id}, {"b", init.action_clusters[1].id}});
  }
  run_discover(config);
  CHECK(load_discovery_state(config).state.action_clusters.size() == 2);
}

TEST_CASE("port conflicts") {
  Workspace ws;
  CurationService first(ws.config);
  Running run(first);
  CurationService second(ws.config);
  try {
    second.bind("127.0.0.1", run.port);
    FAIL("second bind succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PortInUse);
  }
}

TEST_CASE("missing discovery state") {
  TempDir dir("nodisc");
  const auto c = PipelineConfig::parse("", dir.path());
  try {
    CurationService svc(c);
    FAIL("constructed without state");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingPrerequisite);
  }
}

TEST_CASE("static files are served next to the API") {
  Workspace ws;
  fs::create_directories(ws.dir / "ui");
  std::ofstream(ws.dir / "ui" / "index.html") << "<html>ui</html>";
  CurationService svc(ws.config);
  const int port = svc.bind("127.0.0.1", 0, ws.dir / "ui");
  std::thread t([&] { svc.listen_after_bind(); });
  svc.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Get("/index.html");
  REQUIRE(res);
  CHECK(res->body == "<html>ui</html>");
  CHECK(cli.Get("/api/v1/clusters")->status == 200);
  svc.stop();
  t.join();
}
