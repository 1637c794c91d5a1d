#include "rolemine/curation.hpp"

#include <algorithm>
#include <set>

#include "rolemine/error.hpp"

namespace rolemine {

std::string_view to_string(CurationOp::Kind kind) {
  switch (kind) {
    case CurationOp::Kind::Merge: return "merge";
    case CurationOp::Kind::Remove: return "remove";
    case CurationOp::Kind::Rename: return "rename";
    case CurationOp::Kind::Pin: return "pin";
  }
  return "?";
}

CurationOp::Kind curation_kind_from_string(std::string_view s) {
  if (s == "merge") return CurationOp::Kind::Merge;
  if (s == "remove") return CurationOp::Kind::Remove;
  if (s == "rename") return CurationOp::Kind::Rename;
  if (s == "pin") return CurationOp::Kind::Pin;
  throw Error(ErrorCode::ConfigInvalid, "unknown curation op '" + std::string(s) + "'");
}

const Role* RoleSet::find(std::string_view id) const {
  for (const auto& r : roles) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

RoleSet initial_roleset(const ClusterState& state) {
  RoleSet rs;
  const auto graph = build_role_graph(state);
  std::map<std::pair<size_t, size_t>, size_t> slot;
  for (const auto& rc : role_clusters(state, graph)) {
    const auto& a = state.action_clusters[rc.action];
    const auto& o = state.object_clusters[rc.object];
    Role r;
    r.id = rc.id;
    r.name = bag_string(a.label) + " / " + bag_string(o.label);
    r.source_pairs.emplace_back(a.id, o.id);
    slot[{rc.action, rc.object}] = rs.roles.size();
    rs.roles.push_back(std::move(r));
  }
  for (size_t i = 0; i < state.assignment.size(); ++i) rs.roles[slot.at(state.assignment[i])].members.push_back(i);
  return rs;
}

namespace {

Role& live_role(RoleSet& rs, const std::string& id) {
  for (auto& r : rs.roles) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::UnknownRole, "no live role '" + id + "'");
}

void add_pin(std::vector<Pin>& pins, Side side, TermBag x, TermBag y) {
  if (x == y) return;
  if (y < x) std::swap(x, y);
  Pin p{side, std::move(x), std::move(y)};
  if (std::find(pins.begin(), pins.end(), p) == pins.end()) pins.push_back(std::move(p));
}

const Cluster& cluster_by_id(const ClusterState& state, const std::string& id) {
  const auto* c = state.find_cluster(id);
  if (!c) throw Error(ErrorCode::UnknownRole, "no cluster '" + id + "'");
  return *c;
}

std::vector<Pin> resolve_pins(const RoleSet& rs, const ClusterState& state, const CurationOp& op) {
  std::vector<Pin> out;
  const auto* ca = state.find_cluster(op.a);
  const auto* cb = state.find_cluster(op.b);
  if (ca || cb) {
    const auto& x = cluster_by_id(state, op.a);
    const auto& y = cluster_by_id(state, op.b);
    if (x.side != y.side) {
      throw Error(ErrorCode::ConfigInvalid, "cannot pin an action cluster against an object cluster");
    }
    add_pin(out, x.side, x.label, y.label);
    return out;
  }
  const auto* ra = rs.find(op.a);
  const auto* rb = rs.find(op.b);
  if (!ra) throw Error(ErrorCode::UnknownRole, "no live role '" + op.a + "'");
  if (!rb) throw Error(ErrorCode::UnknownRole, "no live role '" + op.b + "'");
  for (const auto& [a1, o1] : ra->source_pairs) {
    for (const auto& [a2, o2] : rb->source_pairs) {
      add_pin(out, Side::Action, cluster_by_id(state, a1).label, cluster_by_id(state, a2).label);
      add_pin(out, Side::Object, cluster_by_id(state, o1).label, cluster_by_id(state, o2).label);
    }
  }
  return out;
}

}  // namespace

void apply_op(RoleSet& rs, const ClusterState& state, const CurationOp& op) {
  CurationOp logged = op;
  switch (op.kind) {
    case CurationOp::Kind::Merge: {
      if (op.a == op.b) throw Error(ErrorCode::ConfigInvalid, "cannot merge a role with itself");
      auto& a = live_role(rs, op.a);
      auto& b = live_role(rs, op.b);
      a.members.insert(a.members.end(), b.members.begin(), b.members.end());
      std::sort(a.members.begin(), a.members.end());
      a.source_pairs.insert(a.source_pairs.end(), b.source_pairs.begin(), b.source_pairs.end());
      const auto id = b.id;
      std::erase_if(rs.roles, [&id](const Role& r) { return r.id == id; });
      break;
    }
    case CurationOp::Kind::Remove: {
      const auto id = live_role(rs, op.a).id;
      std::erase_if(rs.roles, [&id](const Role& r) { return r.id == id; });
      rs.removed.push_back(id);
      break;
    }
    case CurationOp::Kind::Rename: {
      if (op.name.empty()) throw Error(ErrorCode::ConfigInvalid, "empty role name");
      auto& a = live_role(rs, op.a);
      for (const auto& r : rs.roles) {
        if (r.id != a.id && r.name == op.name) {
          throw Error(ErrorCode::NameCollision, "role '" + r.id + "' is already named '" + op.name + "'");
        }
      }
      a.name = op.name;
      break;
    }
    case CurationOp::Kind::Pin: {
      if (logged.pins.empty()) logged.pins = resolve_pins(rs, state, op);
      for (const auto& p : logged.pins) add_pin(rs.pins, p.side, p.first, p.second);
      break;
    }
  }
  rs.log.push_back(std::move(logged));
}

RoleSet apply_curation(const ClusterState& state, const std::vector<CurationOp>& ops) {
  auto rs = initial_roleset(state);
  for (const auto& op : ops) apply_op(rs, state, op);
  return rs;
}

std::vector<Pin> collect_pins(const std::vector<CurationOp>& ops) {
  std::vector<Pin> out;
  for (const auto& op : ops) {
    if (op.kind != CurationOp::Kind::Pin) continue;
    for (const auto& p : op.pins) add_pin(out, p.side, p.first, p.second);
  }
  return out;
}

std::vector<LabeledMention> build_training_set(const RoleSet& rs, const std::vector<NormalizedMention>& mentions) {
  std::vector<std::pair<size_t, const std::string*>> labeled;
  for (const auto& r : rs.roles) {
    for (auto m : r.members) {
      if (m >= mentions.size()) {
        throw Error(ErrorCode::StateCorrupt, "role '" + r.id + "' references mention " + std::to_string(m));
      }
      labeled.emplace_back(m, &r.name);
    }
  }
  if (labeled.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no role has member mentions");
  std::sort(labeled.begin(), labeled.end());
  std::vector<LabeledMention> out;
  out.reserve(labeled.size());
  for (const auto& [m, name] : labeled) out.push_back({mentions[m], *name});
  return out;
}

}  // namespace rolemine
