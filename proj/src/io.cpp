#include "rolemine/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <sstream>

#include "rolemine/error.hpp"

namespace rolemine {

namespace fs = std::filesystem;

AtomicWriter::AtomicWriter(fs::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  tmp_ = path_;
  tmp_ += ".tmp." + std::to_string(::getpid());
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::MissingPrerequisite, "cannot write " + tmp_.string());
}

AtomicWriter::~AtomicWriter() {
  if (!done_) {
    out_.close();
    std::error_code ec;
    fs::remove(tmp_, ec);
  }
}

void AtomicWriter::commit() {
  out_.flush();
  if (!out_) throw Error(ErrorCode::MissingPrerequisite, "write failed: " + tmp_.string());
  out_.close();
  fs::rename(tmp_, path_);
  done_ = true;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  AtomicWriter w(path);
  w.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  w.commit();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingPrerequisite, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void for_each_jsonl(const fs::path& path, const std::function<void(const json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingPrerequisite, "cannot read " + path.string());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
      fn(j);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::StateCorrupt, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::StateCorrupt, std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<T>() : fallback;
}

}  // namespace

void to_json(json& j, const Document& d) {
  j = json{{"doc_id", d.doc_id}, {"source_path", d.source_path}, {"text", d.contrib_text}, {"list_format", d.list_format}};
}

void from_json(const json& j, Document& d) {
  d.doc_id = field<std::string>(j, "doc_id");
  d.source_path = field_or<std::string>(j, "source_path", "");
  d.contrib_text = field<std::string>(j, "text");
  d.list_format = field_or<bool>(j, "list_format", false);
}

void to_json(json& j, const RoleMention& m) {
  j = json{{"doc_id", m.doc_id}, {"sentence", m.sentence_index}, {"subject", m.subject}, {"action", m.action},
           {"object", m.object}};
}

void from_json(const json& j, RoleMention& m) {
  m.doc_id = field<std::string>(j, "doc_id");
  m.sentence_index = field_or<size_t>(j, "sentence", 0);
  m.subject = field<std::string>(j, "subject");
  m.action = field<std::vector<std::string>>(j, "action");
  m.object = field_or<std::vector<std::string>>(j, "object", {});
}

void to_json(json& j, const NormalizedMention& m) {
  j = json{{"doc_id", m.doc_id}, {"sentence", m.sentence_index}, {"subject", m.subject}, {"action", m.action_terms},
           {"object", m.object_terms}};
}

void from_json(const json& j, NormalizedMention& m) {
  m.doc_id = field<std::string>(j, "doc_id");
  m.sentence_index = field_or<size_t>(j, "sentence", 0);
  m.subject = field<std::string>(j, "subject");
  m.action_terms = field<std::vector<std::string>>(j, "action");
  m.object_terms = field_or<std::vector<std::string>>(j, "object", {});
}

void to_json(json& j, const KeywordEntry& e) {
  j = json{{"stem", e.stem}, {"kind", to_string(e.kind)}, {"freq_actions", nullptr}, {"freq_objects", nullptr}};
  if (e.freq_actions) j["freq_actions"] = *e.freq_actions;
  if (e.freq_objects) j["freq_objects"] = *e.freq_objects;
}

void from_json(const json& j, KeywordEntry& e) {
  e.stem = field<std::string>(j, "stem");
  e.kind = keyword_kind_from_string(field<std::string>(j, "kind"));
  e.freq_actions = j.contains("freq_actions") && !j["freq_actions"].is_null()
                       ? std::optional<size_t>(j["freq_actions"].get<size_t>())
                       : std::nullopt;
  e.freq_objects = j.contains("freq_objects") && !j["freq_objects"].is_null()
                       ? std::optional<size_t>(j["freq_objects"].get<size_t>())
                       : std::nullopt;
}

json keywords_to_json(const KeywordTable& kw) { return json(kw.entries()); }

KeywordTable keywords_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigInvalid, "keyword table must be a JSON array");
  try {
    return KeywordTable(j.get<std::vector<KeywordEntry>>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad keyword table: ") + e.what());
  }
}

void to_json(json& j, const Pin& p) {
  j = json{{"side", to_string(p.side)}, {"first", p.first}, {"second", p.second}};
}

void from_json(const json& j, Pin& p) {
  p.side = side_from_string(field<std::string>(j, "side"));
  p.first = make_bag(field<std::vector<std::string>>(j, "first"));
  p.second = make_bag(field<std::vector<std::string>>(j, "second"));
}

void to_json(json& j, const CurationOp& op) {
  j = json::object();
  j["op"] = to_string(op.kind);
  if (!op.op_id.empty()) j["op_id"] = op.op_id;
  if (!op.a.empty()) j["a"] = op.a;
  if (!op.b.empty()) j["b"] = op.b;
  if (!op.name.empty()) j["name"] = op.name;
  if (!op.pins.empty()) j["pins"] = op.pins;
}

void from_json(const json& j, CurationOp& op) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "curation op must be an object");
  op.kind = curation_kind_from_string(field<std::string>(j, "op"));
  op.op_id = field_or<std::string>(j, "op_id", "");
  op.a = field_or<std::string>(j, "a", "");
  op.b = field_or<std::string>(j, "b", "");
  op.name = field_or<std::string>(j, "name", "");
  op.pins = field_or<std::vector<Pin>>(j, "pins", {});
  const bool needs_b = op.kind == CurationOp::Kind::Merge || (op.kind == CurationOp::Kind::Pin && op.pins.empty());
  if ((op.a.empty() && op.pins.empty()) || (needs_b && op.b.empty())) {
    throw Error(ErrorCode::ConfigInvalid, "curation op '" + std::string(to_string(op.kind)) + "' is missing a role id");
  }
  if (op.kind == CurationOp::Kind::Rename && op.name.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "rename needs a name");
  }
}

std::vector<CurationOp> curation_from_json(const json& j) {
  const json& ops = j.is_object() && j.contains("ops") ? j.at("ops") : j;
  if (!ops.is_array()) throw Error(ErrorCode::ConfigInvalid, "curation file must hold an array of ops");
  std::vector<CurationOp> out;
  for (const auto& o : ops) out.push_back(o.get<CurationOp>());
  return out;
}

void to_json(json& j, const RoleSet& rs) {
  json roles = json::array();
  for (const auto& r : rs.roles) {
    json pairs = json::array();
    for (const auto& [a, o] : r.source_pairs) pairs.push_back({a, o});
    roles.push_back(json{{"id", r.id}, {"name", r.name}, {"size", r.members.size()}, {"source_pairs", pairs},
                         {"members", r.members}});
  }
  j = json{{"roles", roles}, {"removed", rs.removed}, {"pins", rs.pins}, {"log", rs.log}};
}

void from_json(const json& j, RoleSet& rs) {
  rs = {};
  for (const auto& r : field<json>(j, "roles")) {
    Role role;
    role.id = field<std::string>(r, "id");
    role.name = field<std::string>(r, "name");
    role.members = field<std::vector<size_t>>(r, "members");
    for (const auto& p : field<json>(r, "source_pairs")) role.source_pairs.emplace_back(p.at(0), p.at(1));
    rs.roles.push_back(std::move(role));
  }
  rs.removed = field_or<std::vector<std::string>>(j, "removed", {});
  rs.pins = field_or<std::vector<Pin>>(j, "pins", {});
  rs.log = field_or<std::vector<CurationOp>>(j, "log", {});
}

void to_json(json& j, const NBModel& m) {
  j = json{{"classes", m.classes},
           {"class_counts", m.class_counts},
           {"log_priors", m.log_priors},
           {"alpha", m.alpha},
           {"feature_count", m.feature_count},
           {"features", m.feature_names},
           {"keyword_fingerprint", m.keyword_fingerprint},
           {"log_present", m.log_present},
           {"log_absent", m.log_absent}};
}

void from_json(const json& j, NBModel& m) {
  m.classes = field<std::vector<std::string>>(j, "classes");
  m.class_counts = field<std::vector<size_t>>(j, "class_counts");
  m.log_priors = field<std::vector<double>>(j, "log_priors");
  m.alpha = field<double>(j, "alpha");
  m.feature_count = field<size_t>(j, "feature_count");
  m.feature_names = field_or<std::vector<std::string>>(j, "features", {});
  m.keyword_fingerprint = field_or<std::string>(j, "keyword_fingerprint", "");
  m.log_present = field<std::vector<std::vector<double>>>(j, "log_present");
  m.log_absent = field<std::vector<std::vector<double>>>(j, "log_absent");
  const size_t k = m.classes.size();
  bool ok = m.class_counts.size() == k && m.log_priors.size() == k && m.log_present.size() == k &&
            m.log_absent.size() == k;
  for (size_t c = 0; ok && c < k; ++c) {
    ok = m.log_present[c].size() == m.feature_count && m.log_absent[c].size() == m.feature_count;
  }
  if (!ok) throw Error(ErrorCode::StateCorrupt, "model dimensions do not agree");
}

void to_json(json& j, const GoldAnnotation& g) {
  json pairs = json::array();
  for (const auto& [s, r] : g.pairs) pairs.push_back({s, r});
  j = json{{"doc_id", g.doc_id}, {"pairs", pairs}};
}

void from_json(const json& j, GoldAnnotation& g) {
  g.doc_id = field<std::string>(j, "doc_id");
  g.pairs.clear();
  for (const auto& p : field<json>(j, "pairs")) g.pairs.emplace_back(p.at(0), p.at(1));
}

void to_json(json& j, const RoleAssignment& r) {
  j = json{{"doc_id", r.doc_id}, {"subject", r.subject}, {"role", r.role}};
}

void from_json(const json& j, RoleAssignment& r) {
  r.doc_id = field<std::string>(j, "doc_id");
  r.subject = field<std::string>(j, "subject");
  r.role = field<std::string>(j, "role");
}

json rolegraph_to_json(const ClusterState& state, double threshold, const std::vector<Pin>& pins,
                       const std::vector<MergeEvent>& merges) {
  const auto graph = build_role_graph(state);
  json nodes = json::array();
  for (const auto* side : {&state.action_clusters, &state.object_clusters}) {
    for (const auto& c : *side) {
      nodes.push_back(json{{"id", c.id}, {"side", to_string(c.side)}, {"label", c.label}, {"size", c.size()},
                           {"members", c.members}});
    }
  }
  json edges = json::array();
  for (const auto& rc : role_clusters(state, graph)) {
    edges.push_back(json{{"id", rc.id},
                         {"a", state.action_clusters[rc.action].id},
                         {"o", state.object_clusters[rc.object].id},
                         {"weight", rc.weight}});
  }
  json history = json::array();
  for (const auto& m : merges) {
    history.push_back(json{{"stage", m.kind == MergeEvent::Kind::Containment ? "containment" : "similarity"},
                           {"side", to_string(m.side)},
                           {"kept", m.kept_label},
                           {"merged", m.other_label},
                           {"similarity", m.similarity}});
  }
  return json{{"threshold", threshold}, {"mentions", state.mentions.size()}, {"pins", pins},
              {"nodes", nodes},         {"edges", edges},                    {"merges", history}};
}

RoleGraphFile rolegraph_from_json(const json& j, std::vector<NormalizedMention> mentions) {
  RoleGraphFile out;
  try {
    out.threshold = field_or<double>(j, "threshold", 0.5);
    out.pins = field_or<std::vector<Pin>>(j, "pins", {});
    auto& st = out.state;
    st.mentions = std::move(mentions);
    const size_t n = st.mentions.size();
    if (field<size_t>(j, "mentions") != n) {
      throw Error(ErrorCode::StateCorrupt, "rolegraph.json was built from a different mention set");
    }
    std::vector<size_t> a_of(n, SIZE_MAX), o_of(n, SIZE_MAX);
    for (const auto& node : field<json>(j, "nodes")) {
      Cluster c;
      c.id = field<std::string>(node, "id");
      c.side = side_from_string(field<std::string>(node, "side"));
      c.label = field<std::vector<std::string>>(node, "label");
      c.members = field<std::vector<size_t>>(node, "members");
      auto& dest = c.side == Side::Action ? st.action_clusters : st.object_clusters;
      auto& owner = c.side == Side::Action ? a_of : o_of;
      for (auto m : c.members) {
        if (m >= n || owner[m] != SIZE_MAX) {
          throw Error(ErrorCode::StateCorrupt, "cluster " + c.id + " lists mention " + std::to_string(m));
        }
        owner[m] = dest.size();
      }
      dest.push_back(std::move(c));
    }
    st.assignment.resize(n);
    for (size_t i = 0; i < n; ++i) {
      if (a_of[i] == SIZE_MAX || o_of[i] == SIZE_MAX) {
        throw Error(ErrorCode::StateCorrupt, "mention " + std::to_string(i) + " is not clustered");
      }
      st.assignment[i] = {a_of[i], o_of[i]};
    }
    for (const auto& h : field_or<json>(j, "merges", json::array())) {
      MergeEvent m;
      m.kind = field<std::string>(h, "stage") == "containment" ? MergeEvent::Kind::Containment
                                                               : MergeEvent::Kind::Similarity;
      m.side = side_from_string(field<std::string>(h, "side"));
      m.kept_label = field<std::vector<std::string>>(h, "kept");
      m.other_label = field<std::vector<std::string>>(h, "merged");
      m.similarity = field<double>(h, "similarity");
      out.merges.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StateCorrupt, std::string("bad rolegraph.json: ") + e.what());
  }
  return out;
}

json report_to_json(const EvalReport& rep) {
  json roles = json::object();
  for (const auto& [name, s] : rep.per_role) {
    roles[name] = json{{"tp", s.counts.tp},
                       {"fp", s.counts.fp},
                       {"fn", s.counts.fn},
                       {"precision", s.metrics.precision},
                       {"recall", s.metrics.recall},
                       {"f1", s.metrics.f1},
                       {"scored", s.scored}};
  }
  json j{{"averaging", "macro: unweighted mean of per-role precision and recall; f1 from the averaged values"},
         {"documents", rep.documents},
         {"per_role", roles},
         {"averages", {{"precision", rep.averages.precision}, {"recall", rep.averages.recall}, {"f1", rep.averages.f1}}},
         {"totals", {{"tp", rep.totals.tp}, {"fp", rep.totals.fp}, {"fn", rep.totals.fn}}}};
  if (rep.errors) {
    json e = json::object();
    for (const auto& [cause, c] : *rep.errors) {
      e[std::string(to_string(cause))] = {{"precision_errors", c.precision_errors}, {"recall_errors", c.recall_errors}};
    }
    j["error_breakdown"] = e;
  } else {
    j["error_breakdown"] = nullptr;
  }
  return j;
}

}  // namespace rolemine
