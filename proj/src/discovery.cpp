#include "rolemine/discovery.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "rolemine/error.hpp"
#include "rolemine/text.hpp"

namespace rolemine {

TermBag make_bag(std::vector<std::string> terms) {
  std::sort(terms.begin(), terms.end());
  return terms;
}

bool bag_includes(const TermBag& big, const TermBag& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string bag_string(const TermBag& bag) { return bag.empty() ? "-" : text::join(bag, "+"); }

std::string_view to_string(Side side) { return side == Side::Action ? "action" : "object"; }

Side side_from_string(std::string_view s) {
  if (s == "action") return Side::Action;
  if (s == "object") return Side::Object;
  throw Error(ErrorCode::ConfigInvalid, "unknown side '" + std::string(s) + "'");
}

namespace {

constexpr double kTieEps = 1e-9;

std::string short_hash(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08llx", static_cast<unsigned long long>((h >> 32) ^ (h & 0xffffffffULL)));
  return buf;
}

// Label = bag of the most numerous member value; ties go to the smaller bag.
TermBag majority_bag(const std::map<TermBag, size_t>& counts) {
  const TermBag* best = nullptr;
  size_t best_n = 0;
  for (const auto& [bag, n] : counts) {
    if (!best || n > best_n) {
      best = &bag;
      best_n = n;
    }
  }
  return best ? *best : TermBag{};
}

// Working form of a ClusterState: mentions with the same bag in the same
// cluster are collapsed into one unit, so merges touch units, not mentions.
struct Work {
  struct Unit {
    TermBag bag;
    size_t count = 0;
    size_t cluster = 0;
  };
  struct WCluster {
    std::vector<size_t> units;
    size_t size = 0;
    TermBag label;
    bool alive = true;
  };
  struct SideData {
    std::vector<Unit> units;
    std::vector<WCluster> clusters;
  };

  const std::vector<NormalizedMention>* mentions = nullptr;
  SideData sides[2];
  std::vector<std::pair<size_t, size_t>> mention_units;  // mention -> (action unit, object unit)

  SideData& side(Side s) { return sides[s == Side::Action ? 0 : 1]; }
  const SideData& side(Side s) const { return sides[s == Side::Action ? 0 : 1]; }

  void relabel(Side s, size_t c) {
    auto& sd = side(s);
    std::map<TermBag, size_t> counts;
    for (auto u : sd.clusters[c].units) counts[sd.units[u].bag] += sd.units[u].count;
    sd.clusters[c].label = majority_bag(counts);
  }

  bool blocked(Side s, size_t c1, size_t c2, const std::vector<Pin>& pins) const {
    if (pins.empty()) return false;
    const auto& sd = side(s);
    auto holds = [&sd](size_t c, const TermBag& bag) {
      for (auto u : sd.clusters[c].units) {
        if (sd.units[u].bag == bag) return true;
      }
      return false;
    };
    for (const auto& p : pins) {
      if (p.side != s) continue;
      if ((holds(c1, p.first) && holds(c2, p.second)) || (holds(c1, p.second) && holds(c2, p.first))) return true;
    }
    return false;
  }

  // Returns the surviving cluster's index.
  size_t merge(Side s, size_t c1, size_t c2, MergeEvent* event) {
    auto& sd = side(s);
    if (c2 < c1) std::swap(c1, c2);
    auto& keep = sd.clusters[c1];
    auto& gone = sd.clusters[c2];
    const TermBag label1 = keep.label;
    const TermBag label2 = gone.label;
    const bool first_bigger = keep.size > gone.size || (keep.size == gone.size && keep.label < gone.label);
    for (auto u : gone.units) {
      sd.units[u].cluster = c1;
      keep.units.push_back(u);
    }
    keep.size += gone.size;
    gone.units.clear();
    gone.size = 0;
    gone.alive = false;
    relabel(s, c1);
    if (event) {
      event->side = s;
      event->kept_label = first_bigger ? label1 : label2;
      event->other_label = first_bigger ? label2 : label1;
    }
    return c1;
  }

  std::map<std::pair<size_t, size_t>, size_t> edges() const {
    std::map<std::pair<size_t, size_t>, size_t> w;
    const auto& a = side(Side::Action);
    const auto& o = side(Side::Object);
    for (const auto& [au, ou] : mention_units) ++w[{a.units[au].cluster, o.units[ou].cluster}];
    return w;
  }

  static Work from_state(const ClusterState& st) {
    Work w;
    w.mentions = &st.mentions;
    std::map<std::pair<size_t, TermBag>, size_t> unit_index[2];
    const std::vector<Cluster>* cl[2] = {&st.action_clusters, &st.object_clusters};
    for (int s = 0; s < 2; ++s) {
      w.sides[s].clusters.resize(cl[s]->size());
      for (size_t c = 0; c < cl[s]->size(); ++c) w.sides[s].clusters[c].label = (*cl[s])[c].label;
    }
    w.mention_units.resize(st.mentions.size());
    for (size_t i = 0; i < st.mentions.size(); ++i) {
      const auto& m = st.mentions[i];
      const size_t cs[2] = {st.assignment[i].first, st.assignment[i].second};
      const TermBag bags[2] = {make_bag(m.action_terms), make_bag(m.object_terms)};
      size_t units[2];
      for (int s = 0; s < 2; ++s) {
        auto key = std::make_pair(cs[s], bags[s]);
        auto it = unit_index[s].find(key);
        if (it == unit_index[s].end()) {
          it = unit_index[s].emplace(key, w.sides[s].units.size()).first;
          w.sides[s].units.push_back({bags[s], 0, cs[s]});
          w.sides[s].clusters[cs[s]].units.push_back(it->second);
        }
        ++w.sides[s].units[it->second].count;
        ++w.sides[s].clusters[cs[s]].size;
        units[s] = it->second;
      }
      w.mention_units[i] = {units[0], units[1]};
    }
    return w;
  }

  ClusterState to_state() const {
    ClusterState st;
    st.mentions = *mentions;
    std::vector<size_t> remap[2];
    std::vector<Cluster>* out[2] = {&st.action_clusters, &st.object_clusters};
    for (int s = 0; s < 2; ++s) {
      remap[s].assign(sides[s].clusters.size(), SIZE_MAX);
      for (size_t c = 0; c < sides[s].clusters.size(); ++c) {
        if (!sides[s].clusters[c].alive || sides[s].clusters[c].size == 0) continue;
        remap[s][c] = out[s]->size();
        Cluster cluster;
        cluster.side = s == 0 ? Side::Action : Side::Object;
        out[s]->push_back(std::move(cluster));
      }
    }
    st.assignment.resize(mention_units.size());
    for (size_t i = 0; i < mention_units.size(); ++i) {
      const size_t a = remap[0][sides[0].units[mention_units[i].first].cluster];
      const size_t o = remap[1][sides[1].units[mention_units[i].second].cluster];
      st.action_clusters[a].members.push_back(i);
      st.object_clusters[o].members.push_back(i);
      st.assignment[i] = {a, o};
    }
    canonicalize(st);
    return st;
  }
};

struct Candidate {
  bool found = false;
  Side side = Side::Action;
  size_t c1 = 0, c2 = 0;
  double similarity = 0.0;
  std::pair<TermBag, TermBag> labels;
};

bool better(const Candidate& x, const Candidate& best) {
  if (!best.found) return true;
  if (x.similarity > best.similarity + kTieEps) return true;
  if (x.similarity < best.similarity - kTieEps) return false;
  if (x.side != best.side) return x.side == Side::Action;
  return x.labels < best.labels;
}

// Similarity of every related pair on side `s`, summed in a fixed order.
void scan_side(const Work& w, Side s, const std::map<std::pair<size_t, size_t>, size_t>& edges,
               const std::vector<Pin>& pins, Candidate& best) {
  const bool action_side = s == Side::Action;
  const auto& here = w.side(s);
  const auto& other = w.side(action_side ? Side::Object : Side::Action);
  std::vector<std::vector<size_t>> related(other.clusters.size());
  for (const auto& [e, wt] : edges) {
    (void)wt;
    if (action_side) related[e.second].push_back(e.first);
    else related[e.first].push_back(e.second);
  }
  std::map<std::pair<size_t, size_t>, double> sims;
  for (const auto& group : related) {
    if (group.size() < 2) continue;
    const double weight = 1.0 / static_cast<double>(group.size());
    for (size_t i = 0; i < group.size(); ++i) {
      for (size_t j = i + 1; j < group.size(); ++j) sims[{group[i], group[j]}] += weight;
    }
  }
  for (const auto& [pair, sim] : sims) {
    Candidate c;
    c.found = true;
    c.side = s;
    c.c1 = pair.first;
    c.c2 = pair.second;
    c.similarity = sim;
    const auto& l1 = here.clusters[pair.first].label;
    const auto& l2 = here.clusters[pair.second].label;
    c.labels = l1 < l2 ? std::make_pair(l1, l2) : std::make_pair(l2, l1);
    if (!better(c, best)) continue;
    if (w.blocked(s, c.c1, c.c2, pins)) continue;
    best = std::move(c);
  }
}

// One containment merge, or false at the fixed point.
bool containment_step(Work& w, const std::vector<Pin>& pins, std::vector<MergeEvent>* events) {
  const auto& a = w.side(Side::Action);
  const auto& o = w.side(Side::Object);
  std::vector<std::pair<size_t, size_t>> roles;
  for (const auto& [e, wt] : w.edges()) {
    (void)wt;
    roles.push_back(e);
  }
  std::sort(roles.begin(), roles.end(), [&](const auto& x, const auto& y) {
    const auto& ax = a.clusters[x.first].label;
    const auto& ay = a.clusters[y.first].label;
    if (ax != ay) return ax < ay;
    return o.clusters[x.second].label < o.clusters[y.second].label;
  });
  for (size_t i = 0; i < roles.size(); ++i) {
    for (size_t j = i + 1; j < roles.size(); ++j) {
      const auto [a1, o1] = roles[i];
      const auto [a2, o2] = roles[j];
      const auto& la1 = a.clusters[a1].label;
      const auto& la2 = a.clusters[a2].label;
      const auto& lo1 = o.clusters[o1].label;
      const auto& lo2 = o.clusters[o2].label;
      const bool contained = (bag_includes(la2, la1) && bag_includes(lo2, lo1)) ||
                             (bag_includes(la1, la2) && bag_includes(lo1, lo2));
      if (!contained) continue;
      if ((a1 != a2 && w.blocked(Side::Action, a1, a2, pins)) ||
          (o1 != o2 && w.blocked(Side::Object, o1, o2, pins))) {
        continue;
      }
      MergeEvent ev;
      ev.kind = MergeEvent::Kind::Containment;
      if (a1 != a2) {
        w.merge(Side::Action, a1, a2, &ev);
        if (events) events->push_back(ev);
      }
      if (o1 != o2) {
        w.merge(Side::Object, o1, o2, &ev);
        if (events) events->push_back(ev);
      }
      return true;
    }
  }
  return false;
}

}  // namespace

const Cluster* ClusterState::find_cluster(std::string_view id) const {
  for (const auto* side : {&action_clusters, &object_clusters}) {
    for (const auto& c : *side) {
      if (c.id == id) return &c;
    }
  }
  return nullptr;
}

void canonicalize(ClusterState& st) {
  std::vector<Cluster>* sides[2] = {&st.action_clusters, &st.object_clusters};
  std::vector<size_t> remap[2];
  for (int s = 0; s < 2; ++s) {
    auto& cl = *sides[s];
    for (auto& c : cl) {
      std::sort(c.members.begin(), c.members.end());
      std::map<TermBag, size_t> counts;
      for (auto m : c.members) {
        const auto& nm = st.mentions[m];
        ++counts[make_bag(s == 0 ? nm.action_terms : nm.object_terms)];
      }
      c.label = majority_bag(counts);
      c.side = s == 0 ? Side::Action : Side::Object;
    }
    std::vector<size_t> order(cl.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&cl](size_t x, size_t y) {
      if (cl[x].size() != cl[y].size()) return cl[x].size() > cl[y].size();
      return cl[x].label < cl[y].label;
    });
    std::vector<Cluster> sorted;
    sorted.reserve(cl.size());
    remap[s].resize(cl.size());
    std::set<std::string> used;
    for (auto i : order) {
      remap[s][i] = sorted.size();
      sorted.push_back(std::move(cl[i]));
      auto& c = sorted.back();
      const std::string base = std::string(s == 0 ? "a-" : "o-") + short_hash(bag_string(c.label));
      std::string id = base;
      for (int k = 2; !used.insert(id).second; ++k) id = base + "." + std::to_string(k);
      c.id = id;
    }
    cl = std::move(sorted);
  }
  for (auto& [a, o] : st.assignment) {
    a = remap[0][a];
    o = remap[1][o];
  }
}

ClusterState init_clusters(const std::vector<NormalizedMention>& mentions) {
  ClusterState st;
  st.mentions = mentions;
  std::map<TermBag, size_t> index[2];
  st.assignment.resize(mentions.size());
  for (size_t i = 0; i < mentions.size(); ++i) {
    const TermBag bags[2] = {make_bag(mentions[i].action_terms), make_bag(mentions[i].object_terms)};
    std::vector<Cluster>* sides[2] = {&st.action_clusters, &st.object_clusters};
    size_t idx[2];
    for (int s = 0; s < 2; ++s) {
      auto it = index[s].find(bags[s]);
      if (it == index[s].end()) {
        it = index[s].emplace(bags[s], sides[s]->size()).first;
        sides[s]->push_back({});
      }
      (*sides[s])[it->second].members.push_back(i);
      idx[s] = it->second;
    }
    st.assignment[i] = {idx[0], idx[1]};
  }
  canonicalize(st);
  return st;
}

RoleGraph::RoleGraph(size_t n_actions, size_t n_objects, std::map<std::pair<size_t, size_t>, size_t> weights)
    : n_actions_(n_actions), n_objects_(n_objects), weights_(std::move(weights)) {
  objects_of_.resize(n_actions_);
  actions_of_.resize(n_objects_);
  for (const auto& [e, w] : weights_) {
    if (w == 0) continue;
    objects_of_[e.first].push_back(e.second);
    actions_of_[e.second].push_back(e.first);
  }
}

size_t RoleGraph::weight(size_t a, size_t o) const {
  auto it = weights_.find({a, o});
  return it == weights_.end() ? 0 : it->second;
}

size_t RoleGraph::total_weight() const {
  size_t t = 0;
  for (const auto& [e, w] : weights_) t += w;
  return t;
}

RoleGraph build_role_graph(const ClusterState& state) {
  std::map<std::pair<size_t, size_t>, size_t> w;
  for (const auto& ao : state.assignment) ++w[ao];
  return RoleGraph(state.action_clusters.size(), state.object_clusters.size(), std::move(w));
}

double object_weight(const RoleGraph& g, size_t o) {
  if (o >= g.object_count() || g.actions_of(o).empty()) {
    throw Error(ErrorCode::IsolatedCluster, "object cluster " + std::to_string(o) + " has no edges");
  }
  return 1.0 / static_cast<double>(g.actions_of(o).size());
}

double action_weight(const RoleGraph& g, size_t a) {
  if (a >= g.action_count() || g.objects_of(a).empty()) {
    throw Error(ErrorCode::IsolatedCluster, "action cluster " + std::to_string(a) + " has no edges");
  }
  return 1.0 / static_cast<double>(g.objects_of(a).size());
}

double action_similarity(const RoleGraph& g, size_t a1, size_t a2) {
  const auto& x = g.objects_of(a1);
  const auto& y = g.objects_of(a2);
  double s = 0.0;
  for (size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      s += object_weight(g, x[i]);
      ++i;
      ++j;
    }
  }
  return s;
}

double object_similarity(const RoleGraph& g, size_t o1, size_t o2) {
  const auto& x = g.actions_of(o1);
  const auto& y = g.actions_of(o2);
  double s = 0.0;
  for (size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      s += action_weight(g, x[i]);
      ++i;
      ++j;
    }
  }
  return s;
}

ClusterState containment_merge_pass(const ClusterState& state, const std::vector<Pin>& pins,
                                    std::vector<MergeEvent>* events) {
  auto w = Work::from_state(state);
  while (containment_step(w, pins, events)) {
  }
  return w.to_state();
}

ClusterResult cluster(const std::vector<NormalizedMention>& mentions, const ClusterOptions& options) {
  ClusterResult res;
  const auto initial = init_clusters(mentions);
  auto w = Work::from_state(initial);
  while (true) {
    ++res.rounds;
    while (containment_step(w, options.pins, &res.merges)) {
    }
    const auto edges = w.edges();
    Candidate best;
    scan_side(w, Side::Action, edges, options.pins, best);
    scan_side(w, Side::Object, edges, options.pins, best);
    res.last_similarity = best.found ? best.similarity : 0.0;
    if (!best.found || best.similarity + kTieEps < options.threshold) break;
    MergeEvent ev;
    ev.kind = MergeEvent::Kind::Similarity;
    ev.similarity = best.similarity;
    w.merge(best.side, best.c1, best.c2, &ev);
    res.merges.push_back(std::move(ev));
  }
  res.state = w.to_state();
  return res;
}

std::vector<RoleCluster> role_clusters(const ClusterState& state, const RoleGraph& g) {
  std::vector<RoleCluster> out;
  for (const auto& [e, w] : g.edges()) {
    if (w == 0) continue;
    out.push_back({{}, e.first, e.second, w});
  }
  std::sort(out.begin(), out.end(), [&state](const RoleCluster& x, const RoleCluster& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    const auto& ax = state.action_clusters[x.action].label;
    const auto& ay = state.action_clusters[y.action].label;
    if (ax != ay) return ax < ay;
    return state.object_clusters[x.object].label < state.object_clusters[y.object].label;
  });
  std::set<std::string> used;
  for (auto& r : out) {
    const std::string base = "r-" + short_hash(bag_string(state.action_clusters[r.action].label) + "|" +
                                               bag_string(state.object_clusters[r.object].label));
    std::string id = base;
    for (int k = 2; !used.insert(id).second; ++k) id = base + "." + std::to_string(k);
    r.id = id;
  }
  return out;
}

size_t role_cluster_count(const ClusterState& state) {
  std::set<std::pair<size_t, size_t>> seen(state.assignment.begin(), state.assignment.end());
  return seen.size();
}

}  // namespace rolemine
