#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rolemine/normalize.hpp"

namespace rolemine {

/// Sorted multiset of stems. Cluster labels and member values are bags.
using TermBag = std::vector<std::string>;

TermBag make_bag(std::vector<std::string> terms);
/// Multiset inclusion: every term of `small` occurs in `big` at least as often.
bool bag_includes(const TermBag& big, const TermBag& small);
/// "a+b+c"; "-" for the empty bag.
std::string bag_string(const TermBag& bag);

enum class Side { Action, Object };
std::string_view to_string(Side side);
Side side_from_string(std::string_view s);

struct Cluster {
  std::string id;
  Side side = Side::Action;
  TermBag label;
  std::vector<size_t> members;  // mention indices, ascending

  size_t size() const { return members.size(); }
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Action and object partitions of a mention set.
///
/// Clusters on each side are ordered by size (descending), then label. Ids are
/// derived from labels, so they survive re-runs that reproduce the clustering.
struct ClusterState {
  std::vector<NormalizedMention> mentions;
  std::vector<Cluster> action_clusters;
  std::vector<Cluster> object_clusters;
  // mention index -> (action cluster index, object cluster index)
  std::vector<std::pair<size_t, size_t>> assignment;

  const Cluster* find_cluster(std::string_view id) const;
  friend bool operator==(const ClusterState&, const ClusterState&) = default;
};

/// Grouping by equal action bags and equal object bags.
ClusterState init_clusters(const std::vector<NormalizedMention>& mentions);

/// Rebuilds ids, ordering and labels after hand-made edits to the partition.
void canonicalize(ClusterState& state);

/// Bipartite relation between action and object clusters, weighted by the
/// number of shared mentions. Indices refer to the state's cluster vectors.
class RoleGraph {
 public:
  RoleGraph() = default;
  RoleGraph(size_t n_actions, size_t n_objects, std::map<std::pair<size_t, size_t>, size_t> weights);

  size_t action_count() const { return n_actions_; }
  size_t object_count() const { return n_objects_; }
  const std::map<std::pair<size_t, size_t>, size_t>& edges() const { return weights_; }
  size_t weight(size_t a, size_t o) const;
  size_t total_weight() const;

  /// Objects related to action `a`, ascending.
  const std::vector<size_t>& objects_of(size_t a) const { return objects_of_[a]; }
  const std::vector<size_t>& actions_of(size_t o) const { return actions_of_[o]; }

 private:
  size_t n_actions_ = 0;
  size_t n_objects_ = 0;
  std::map<std::pair<size_t, size_t>, size_t> weights_;
  std::vector<std::vector<size_t>> objects_of_;
  std::vector<std::vector<size_t>> actions_of_;
};

RoleGraph build_role_graph(const ClusterState& state);

/// 1 / number of action clusters related to object `o`.
/// Throws Error(IsolatedCluster) when there are none.
double object_weight(const RoleGraph& g, size_t o);
/// 1 / number of object clusters related to action `a`.
double action_weight(const RoleGraph& g, size_t a);

/// Sum of object weights over the objects both actions are related to.
double action_similarity(const RoleGraph& g, size_t a1, size_t a2);
double object_similarity(const RoleGraph& g, size_t o1, size_t o2);

/// Cannot-link constraint: a cluster holding a member with bag `first` never
/// merges with one holding a member with bag `second`.
struct Pin {
  Side side = Side::Action;
  TermBag first;
  TermBag second;

  friend bool operator==(const Pin&, const Pin&) = default;
  friend auto operator<=>(const Pin&, const Pin&) = default;
};

struct MergeEvent {
  enum class Kind { Containment, Similarity } kind = Kind::Similarity;
  Side side = Side::Action;
  TermBag kept_label;
  TermBag other_label;
  double similarity = 0.0;  // 0 for containment merges
};

/// Merges role clusters whose action and object labels are both included in
/// another role cluster's labels, until nothing changes.
ClusterState containment_merge_pass(const ClusterState& state, const std::vector<Pin>& pins = {},
                                    std::vector<MergeEvent>* events = nullptr);

struct ClusterOptions {
  double threshold = 0.5;
  std::vector<Pin> pins;
};

struct ClusterResult {
  ClusterState state;
  std::vector<MergeEvent> merges;
  size_t rounds = 0;
  double last_similarity = 0.0;  // best similarity seen when the loop stopped
};

/// Alternates containment passes with single best-similarity merges while the
/// best similarity stays at or above the threshold.
///
/// Ties: higher similarity first (within 1e-9), then action pairs before
/// object pairs, then the lexicographically smallest pair of labels.
ClusterResult cluster(const std::vector<NormalizedMention>& mentions, const ClusterOptions& options = {});

/// Role clusters: one per graph edge, heaviest first.
struct RoleCluster {
  std::string id;
  size_t action = 0;  // cluster indices into the state
  size_t object = 0;
  size_t weight = 0;
};

std::vector<RoleCluster> role_clusters(const ClusterState& state, const RoleGraph& g);

/// Number of role clusters (edges) in a state.
size_t role_cluster_count(const ClusterState& state);

}  // namespace rolemine
