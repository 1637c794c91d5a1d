#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rolemine/discovery.hpp"

namespace rolemine {

/// A named role backed by one or more role clusters.
struct Role {
  std::string id;
  std::string name;
  std::vector<size_t> members;  // mention indices, ascending
  std::vector<std::pair<std::string, std::string>> source_pairs;  // (action cluster id, object cluster id)

  friend bool operator==(const Role&, const Role&) = default;
};

struct CurationOp {
  enum class Kind { Merge, Remove, Rename, Pin };

  Kind kind = Kind::Merge;
  std::string op_id;  // optional; lets clients retry without applying twice
  std::string a;      // role id (or cluster id, for pins)
  std::string b;
  std::string name;
  // Pins resolved to label bags when first applied. Replays use these
  // directly so they stay valid after a re-run renumbers clusters.
  std::vector<Pin> pins;

  friend bool operator==(const CurationOp&, const CurationOp&) = default;
};

std::string_view to_string(CurationOp::Kind kind);
CurationOp::Kind curation_kind_from_string(std::string_view s);

struct RoleSet {
  std::vector<Role> roles;           // live roles
  std::vector<std::string> removed;  // ids of removed roles, in removal order
  std::vector<Pin> pins;
  std::vector<CurationOp> log;

  const Role* find(std::string_view id) const;
  friend bool operator==(const RoleSet&, const RoleSet&) = default;
};

/// One role per role cluster, named after its labels.
RoleSet initial_roleset(const ClusterState& state);

/// Applies one op in place and appends it (with pins resolved) to the log.
///
/// Throws Error(UnknownRole) for ids that are not live roles (or clusters,
/// for pins) and Error(NameCollision) when a rename would duplicate a name.
void apply_op(RoleSet& roles, const ClusterState& state, const CurationOp& op);

RoleSet apply_curation(const ClusterState& state, const std::vector<CurationOp>& ops);

/// Every pin recorded by the ops, in order, without duplicates.
std::vector<Pin> collect_pins(const std::vector<CurationOp>& ops);

struct LabeledMention {
  NormalizedMention mention;
  std::string role;
};

/// Member mentions of every live role, labeled with the role name, in
/// mention order. Throws Error(EmptyTrainingSet) when nothing is left.
std::vector<LabeledMention> build_training_set(const RoleSet& roles, const std::vector<NormalizedMention>& mentions);

}  // namespace rolemine
