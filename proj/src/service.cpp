#include "rolemine/service.hpp"

#include <mutex>
#include <set>

#include <httplib.h>

#include "rolemine/error.hpp"

namespace rolemine {

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownRole: return 404;
    case ErrorCode::NameCollision: return 409;
    case ErrorCode::ConfigInvalid: return 400;
    default: return 500;
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send_json(res, json{{"error", code}, {"message", message}}, status);
}

size_t query_size(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return 0;
  const auto v = req.get_param_value(key);
  size_t pos = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(v, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size()) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be a non-negative integer");
  return n;
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "ConfigInvalid", e.what());
    }
  };
}

}  // namespace

CurationService::CurationService(PipelineConfig config) : config_(std::move(config)) {
  state_ = load_discovery_state(config_);
  graph_ = rolegraph_to_json(state_.state, state_.threshold, state_.pins, state_.merges);
  ops_ = load_curation(config_);
  std::vector<Diagnostic> skipped;
  roles_ = apply_curation_lenient(state_.state, ops_, &skipped);
}

CurationService::~CurationService() { stop(); }

json CurationService::role_json(const Role& r, bool with_members) const {
  json pairs = json::array();
  for (const auto& [a, o] : r.source_pairs) {
    const auto* ac = state_.state.find_cluster(a);
    const auto* oc = state_.state.find_cluster(o);
    pairs.push_back(json{{"a", a},
                         {"o", o},
                         {"action", ac ? json(ac->label) : json::array()},
                         {"object", oc ? json(oc->label) : json::array()}});
  }
  json j{{"id", r.id}, {"name", r.name}, {"size", r.members.size()}, {"source_pairs", pairs}};
  if (with_members) j["members"] = r.members;
  return j;
}

json CurationService::mention_json(size_t i) const {
  const auto& m = state_.state.mentions[i];
  const auto [a, o] = state_.state.assignment[i];
  return json{{"index", i},
              {"doc_id", m.doc_id},
              {"sentence", m.sentence_index},
              {"subject", m.subject},
              {"action", m.action_terms},
              {"object", m.object_terms},
              {"action_cluster", state_.state.action_clusters[a].id},
              {"object_cluster", state_.state.object_clusters[o].id}};
}

json CurationService::clusters() const {
  std::shared_lock lock(mu_);
  json roles = json::array();
  for (const auto& r : roles_.roles) roles.push_back(role_json(r, false));
  auto side = [](const std::vector<Cluster>& cs) {
    json out = json::array();
    for (const auto& c : cs) out.push_back(json{{"id", c.id}, {"label", c.label}, {"size", c.size()}});
    return out;
  };
  return json{{"roles", roles},
              {"removed", roles_.removed},
              {"pins", roles_.pins},
              {"action_clusters", side(state_.state.action_clusters)},
              {"object_clusters", side(state_.state.object_clusters)},
              {"log_size", roles_.log.size()}};
}

json CurationService::graph() const {
  std::shared_lock lock(mu_);
  return graph_;
}

json CurationService::mentions(std::string_view id, size_t offset, size_t limit) const {
  std::shared_lock lock(mu_);
  const std::vector<size_t>* members = nullptr;
  if (const auto* r = roles_.find(id)) {
    members = &r->members;
  } else if (const auto* c = state_.state.find_cluster(id)) {
    members = &c->members;
  } else {
    throw Error(ErrorCode::UnknownRole, "no role or cluster " + std::string(id));
  }
  json items = json::array();
  const size_t end = limit ? std::min(members->size(), offset + limit) : members->size();
  for (size_t k = offset; k < end; ++k) items.push_back(mention_json((*members)[k]));
  return json{{"cluster", id}, {"total", members->size()}, {"offset", offset}, {"mentions", items}};
}

json CurationService::curate(const json& body) {
  std::vector<CurationOp> incoming;
  if (body.is_object() && !body.contains("ops")) {
    incoming.push_back(body.get<CurationOp>());
  } else {
    incoming = curation_from_json(body);
  }

  std::unique_lock lock(mu_);
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (!op.op_id.empty()) seen.insert(op.op_id);
  }
  RoleSet next = roles_;
  std::vector<CurationOp> accepted;
  size_t duplicates = 0;
  bool pinned = false;
  for (const auto& op : incoming) {
    if (!op.op_id.empty() && !seen.insert(op.op_id).second) {
      ++duplicates;
      continue;
    }
    apply_op(next, state_.state, op);
    accepted.push_back(next.log.back());  // pins resolved to label bags
    pinned = pinned || op.kind == CurationOp::Kind::Pin;
  }
  if (!accepted.empty()) {
    auto ops = ops_;
    ops.insert(ops.end(), accepted.begin(), accepted.end());
    std::swap(ops_, ops);
    try {
      persist_log();
    } catch (...) {
      std::swap(ops_, ops);
      throw;
    }
    roles_ = std::move(next);
  }
  json roles = json::array();
  for (const auto& r : roles_.roles) roles.push_back(role_json(r, false));
  return json{{"applied", accepted.size()},
              {"duplicates", duplicates},
              // pins only take effect when discovery runs again
              {"rediscover_required", pinned},
              {"roles", roles},
              {"removed", roles_.removed},
              {"log_size", roles_.log.size()}};
}

void CurationService::persist_log() const {
  write_file_atomic(config_.curation_path(), dump(json(ops_)));
}

json CurationService::export_roleset() {
  std::unique_lock lock(mu_);
  json j = roles_;
  write_file_atomic(config_.roleset_path(), dump(j));
  return j;
}

RoleSet CurationService::roleset() const {
  std::shared_lock lock(mu_);
  return roles_;
}

std::vector<CurationOp> CurationService::log() const {
  std::shared_lock lock(mu_);
  return ops_;
}

void CurationService::install_routes(const std::optional<std::filesystem::path>& static_dir) {
  server_ = std::make_unique<httplib::Server>();
  auto& s = *server_;
  // httplib's default adds SO_REUSEPORT, which lets a second server share the port
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  s.Get("/api/v1/clusters", guarded([this](const httplib::Request&, httplib::Response& res) {
          send_json(res, clusters());
        }));
  s.Get("/api/v1/graph", guarded([this](const httplib::Request&, httplib::Response& res) {
          send_json(res, graph());
        }));
  s.Get("/api/v1/mentions", guarded([this](const httplib::Request& req, httplib::Response& res) {
          if (!req.has_param("cluster")) throw Error(ErrorCode::ConfigInvalid, "missing ?cluster=ID");
          send_json(res, mentions(req.get_param_value("cluster"), query_size(req, "offset"), query_size(req, "limit")));
        }));
  s.Post("/api/v1/curation", guarded([this](const httplib::Request& req, httplib::Response& res) {
           send_json(res, curate(json::parse(req.body)));
         }));
  s.Post("/api/v1/export", guarded([this](const httplib::Request&, httplib::Response& res) {
           send_json(res, export_roleset());
         }));
  if (static_dir) {
    if (!std::filesystem::is_directory(*static_dir)) {
      throw Error(ErrorCode::MissingPrerequisite, "static directory not found: " + static_dir->string());
    }
    s.set_mount_point("/", static_dir->string());
  }
}

int CurationService::bind(const std::string& host, int port, const std::optional<std::filesystem::path>& static_dir) {
  install_routes(static_dir);
  if (port == 0) {
    const int p = server_->bind_to_any_port(host);
    if (p < 0) throw Error(ErrorCode::PortInUse, "could not bind " + host);
    return p;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::PortInUse, host + ":" + std::to_string(port) + " is not available");
  }
  return port;
}

void CurationService::listen_after_bind() { server_->listen_after_bind(); }

void CurationService::wait_until_ready() const { server_->wait_until_ready(); }

void CurationService::serve(const std::string& host, int port, const std::optional<std::filesystem::path>& static_dir) {
  bind(host, port, static_dir);
  listen_after_bind();
}

void CurationService::stop() {
  if (server_) server_->stop();
}

}  // namespace rolemine
