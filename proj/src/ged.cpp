#include "egraph/ged.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "egraph/error.hpp"

namespace egraph {

namespace {

constexpr int kUnassigned = -1;
constexpr int kDeleted = -2;

// Graph with integer node and relation labels and, per ordered node pair,
// the sorted multiset of relation labels on that pair.
struct IndexedGraph {
  int n = 0;
  std::vector<int> node_label;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> arc_label;
  std::vector<std::vector<int>> pair_labels;  // n * n

  const std::vector<int>& between(int u, int v) const { return pair_labels[u * n + v]; }
};

class LabelTable {
 public:
  int id(const std::string& key) {
    auto [it, inserted] = ids_.emplace(key, static_cast<int>(ids_.size()));
    return it->second;
  }
  int size() const { return static_cast<int>(ids_.size()); }

 private:
  std::unordered_map<std::string, int> ids_;
};

IndexedGraph index_graph(const ExplanationGraph& g, LabelTable& nodes, LabelTable& relations) {
  IndexedGraph ig;
  ig.n = static_cast<int>(g.node_count());
  for (const Concept& c : g.nodes()) ig.node_label.push_back(nodes.id(c.key()));
  ig.pair_labels.assign(static_cast<std::size_t>(ig.n * ig.n), {});
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [h, t] = g.endpoints()[i];
    int label = relations.id(g.edges()[i].relation_key());
    ig.arcs.emplace_back(static_cast<int>(h), static_cast<int>(t));
    ig.arc_label.push_back(label);
    ig.pair_labels[h * ig.n + t].push_back(label);
  }
  for (auto& labels : ig.pair_labels) std::sort(labels.begin(), labels.end());
  return ig;
}

int common_count(const std::vector<int>& a, const std::vector<int>& b) {
  int common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

// Cost of turning one label multiset into another with unit insert, delete
// and relabel operations.
int multiset_edit(const std::vector<int>& a, const std::vector<int>& b) {
  return static_cast<int>(std::max(a.size(), b.size())) - common_count(a, b);
}

class GedSearch {
 public:
  GedSearch(IndexedGraph a, IndexedGraph b, int node_labels)
      : a_(std::move(a)),
        b_(std::move(b)),
        map_(a_.n, kUnassigned),
        used_(b_.n, false),
        node_count_(node_labels, 0),
        inverse_(b_.n, kUnassigned),
        groups_a_(2 * a_.n + 1),
        groups_b_(2 * a_.n + 1) {
    order_.resize(a_.n);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<int> degree(a_.n, 0);
    for (auto [u, v] : a_.arcs) {
      ++degree[u];
      ++degree[v];
    }
    // Highest degree first, then greedily the node with most arcs into the
    // placed prefix so that pair costs are charged early.
    std::vector<int> links(a_.n, 0);
    std::vector<bool> placed(a_.n, false);
    for (int k = 0; k < a_.n; ++k) {
      int pick = -1;
      for (int x = 0; x < a_.n; ++x) {
        if (placed[x]) continue;
        if (pick < 0 || links[x] > links[pick] || (links[x] == links[pick] && degree[x] > degree[pick])) pick = x;
      }
      order_[k] = pick;
      placed[pick] = true;
      for (auto [u, v] : a_.arcs) {
        if (u == pick) ++links[v];
        if (v == pick) ++links[u];
      }
    }
  }

  int solve() {
    best_ = a_.n + b_.n + static_cast<int>(a_.arcs.size() + b_.arcs.size());
    search(0, 0);
    return best_;
  }

 private:
  int pair_cost(int u, int ju, int v, int jv) const {
    static const std::vector<int> kEmpty;
    const auto& b_uv = (ju >= 0 && jv >= 0) ? b_.between(ju, jv) : kEmpty;
    return multiset_edit(a_.between(u, v), b_uv);
  }

  // Cost added by mapping node u (the next in order) to j, where j may be
  // kDeleted, counting node cost and edges to already mapped nodes.
  int step_cost(std::size_t depth, int u, int j) const {
    int cost = (j == kDeleted) ? 1 : (a_.node_label[u] != b_.node_label[j] ? 1 : 0);
    for (std::size_t k = 0; k < depth; ++k) {
      int v = order_[k];
      int jv = map_[v];
      cost += pair_cost(u, j, v, jv) + pair_cost(v, jv, u, j);
    }
    return cost;
  }

  int completion_cost() const {
    int cost = 0;
    for (int j = 0; j < b_.n; ++j) cost += used_[j] ? 0 : 1;
    for (auto [x, y] : b_.arcs) cost += (!used_[x] || !used_[y]) ? 1 : 0;
    return cost;
  }

  // Admissible bound on the cost still to come after `depth` nodes of a are
  // mapped.
  int lower_bound(std::size_t depth) {
    int bound = 0;
    // nodes
    int r1 = 0, r2 = 0, shared = 0;
    for (std::size_t k = depth; k < order_.size(); ++k) {
      ++node_count_[a_.node_label[order_[k]]];
      ++r1;
    }
    for (int j = 0; j < b_.n; ++j) {
      if (used_[j]) continue;
      ++r2;
      int& c = node_count_[b_.node_label[j]];
      if (c > 0) {
        ++shared;
        --c;
      }
    }
    for (std::size_t k = depth; k < order_.size(); ++k) node_count_[a_.node_label[order_[k]]] = 0;
    bound += std::max(r1, r2) - shared;
    // Pending edges, grouped so that edges can only match within a group:
    // one group per (mapped node, direction) for edges with one mapped end,
    // plus one group for edges with no mapped end.
    const int free_group = 2 * a_.n;
    for (auto& g : groups_a_) g.clear();
    for (auto& g : groups_b_) g.clear();
    for (std::size_t i = 0; i < a_.arcs.size(); ++i) {
      auto [x, y] = a_.arcs[i];
      const bool mx = map_[x] != kUnassigned, my = map_[y] != kUnassigned;
      if (mx && my) continue;
      const int group = mx ? 2 * x : (my ? 2 * y + 1 : free_group);
      groups_a_[group].push_back(a_.arc_label[i]);
    }
    for (std::size_t i = 0; i < b_.arcs.size(); ++i) {
      auto [x, y] = b_.arcs[i];
      if (used_[x] && used_[y]) continue;
      const int group = used_[x] ? 2 * inverse_[x] : (used_[y] ? 2 * inverse_[y] + 1 : free_group);
      groups_b_[group].push_back(b_.arc_label[i]);
    }
    for (std::size_t g = 0; g < groups_a_.size(); ++g) {
      if (groups_a_[g].empty() && groups_b_[g].empty()) continue;
      std::sort(groups_a_[g].begin(), groups_a_[g].end());
      std::sort(groups_b_[g].begin(), groups_b_[g].end());
      bound += multiset_edit(groups_a_[g], groups_b_[g]);
    }
    return bound;
  }

  void search(std::size_t depth, int cost) {
    if (depth == order_.size()) {
      best_ = std::min(best_, cost + completion_cost());
      return;
    }
    if (cost + lower_bound(depth) >= best_) return;
    const int u = order_[depth];
    std::vector<std::pair<int, int>> options;  // (step cost, target)
    options.reserve(b_.n + 1);
    for (int j = 0; j < b_.n; ++j) {
      if (!used_[j]) options.emplace_back(step_cost(depth, u, j), j);
    }
    options.emplace_back(step_cost(depth, u, kDeleted), kDeleted);
    std::stable_sort(options.begin(), options.end());
    for (auto [step, j] : options) {
      if (cost + step >= best_) break;
      map_[u] = j;
      if (j >= 0) {
        used_[j] = true;
        inverse_[j] = u;
      }
      search(depth + 1, cost + step);
      if (j >= 0) used_[j] = false;
      map_[u] = kUnassigned;
    }
  }

  IndexedGraph a_, b_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> node_count_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> groups_a_, groups_b_;
  int best_ = 0;
};

}  // namespace

GedResult graph_edit_distance(const ExplanationGraph& a, const ExplanationGraph& b) {
  if (a.edge_count() > kGedMaxEdges || b.edge_count() > kGedMaxEdges) {
    throw SizeLimitError("exact graph edit distance supports at most " + std::to_string(kGedMaxEdges) +
                         " edges per graph");
  }
  LabelTable nodes, relations;
  IndexedGraph ia = index_graph(a, nodes, relations);
  IndexedGraph ib = index_graph(b, nodes, relations);
  GedResult result;
  result.normalizer = static_cast<int>(a.node_count() + b.node_count() + a.edge_count() + b.edge_count());
  result.cost = GedSearch(std::move(ia), std::move(ib), nodes.size()).solve();
  return result;
}

double ged(const ExplanationGraph& pred, const ExplanationGraph& gold) {
  return graph_edit_distance(pred, gold).normalized();
}

}  // namespace egraph
