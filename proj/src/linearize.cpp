#include "egraph/linearize.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "egraph/rng.hpp"
#include "egraph/topology.hpp"

namespace egraph {

std::optional<EdgeOrdering> parse_ordering(std::string_view name) {
  if (name == "dfs") return EdgeOrdering::dfs;
  if (name == "bfs") return EdgeOrdering::bfs;
  if (name == "topological" || name == "topo") return EdgeOrdering::topological;
  if (name == "random") return EdgeOrdering::random;
  return std::nullopt;
}

std::string_view to_string(EdgeOrdering ordering) {
  switch (ordering) {
    case EdgeOrdering::dfs: return "dfs";
    case EdgeOrdering::bfs: return "bfs";
    case EdgeOrdering::topological: return "topological";
    case EdgeOrdering::random: return "random";
  }
  return "dfs";
}

namespace {

class Traversal {
 public:
  explicit Traversal(const ExplanationGraph& g) : g_(g), out_(g.node_count()), indegree_(g.node_count(), 0) {
    const auto& ends = g.endpoints();
    for (std::size_t i = 0; i < ends.size(); ++i) {
      out_[ends[i].first].push_back(i);
      ++indegree_[ends[i].second];
    }
    for (auto& edges : out_) {
      std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
        const Edge& ea = g.edges()[a];
        const Edge& eb = g.edges()[b];
        if (ea.tail.key() != eb.tail.key()) return ea.tail.key() < eb.tail.key();
        if (ea.relation_key() != eb.relation_key()) return ea.relation_key() < eb.relation_key();
        return a < b;
      });
    }
  }

  std::vector<std::size_t> roots() const {
    std::vector<std::size_t> r;
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      if (indegree_[v] == 0) r.push_back(v);
    }
    std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return label_less(a, b); });
    return r;
  }

  bool label_less(std::size_t a, std::size_t b) const { return g_.nodes()[a].key() < g_.nodes()[b].key(); }

  std::vector<std::size_t> dfs() const {
    std::vector<std::size_t> order;
    std::vector<bool> visited(g_.node_count(), false);
    for (std::size_t root : roots()) {
      if (!visited[root]) dfs_visit(root, visited, order);
    }
    return order;
  }

  std::vector<std::size_t> bfs() const {
    std::vector<std::size_t> order;
    std::vector<bool> visited(g_.node_count(), false);
    for (std::size_t root : roots()) {
      if (visited[root]) continue;
      std::deque<std::size_t> queue{root};
      visited[root] = true;
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : out_[v]) {
          order.push_back(e);
          std::size_t t = g_.endpoints()[e].second;
          if (!visited[t]) {
            visited[t] = true;
            queue.push_back(t);
          }
        }
      }
    }
    return order;
  }

  std::vector<std::size_t> topological() const {
    std::vector<std::size_t> order;
    std::vector<std::size_t> indegree = indegree_;
    auto cmp = [this](std::size_t a, std::size_t b) {
      return label_less(a, b) || (!label_less(b, a) && a < b);
    };
    std::set<std::size_t, decltype(cmp)> ready(cmp);
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      if (indegree[v] == 0) ready.insert(v);
    }
    while (!ready.empty()) {
      std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      for (std::size_t e : out_[v]) {
        order.push_back(e);
        std::size_t t = g_.endpoints()[e].second;
        if (--indegree[t] == 0) ready.insert(t);
      }
    }
    return order;
  }

 private:
  void dfs_visit(std::size_t v, std::vector<bool>& visited, std::vector<std::size_t>& order) const {
    visited[v] = true;
    for (std::size_t e : out_[v]) {
      order.push_back(e);
      std::size_t t = g_.endpoints()[e].second;
      if (!visited[t]) dfs_visit(t, visited, order);
    }
  }

  const ExplanationGraph& g_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> indegree_;
};

}  // namespace

std::vector<Edge> linearize(const ExplanationGraph& g, EdgeOrdering ordering, std::uint64_t seed) {
  require_connected_dag(g);
  std::vector<std::size_t> order;
  switch (ordering) {
    case EdgeOrdering::dfs: order = Traversal(g).dfs(); break;
    case EdgeOrdering::bfs: order = Traversal(g).bfs(); break;
    case EdgeOrdering::topological: order = Traversal(g).topological(); break;
    case EdgeOrdering::random: {
      order.resize(g.edge_count());
      std::iota(order.begin(), order.end(), 0);
      Rng rng(seed);
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      break;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (std::size_t e : order) edges.push_back(g.edges()[e]);
  return edges;
}

}  // namespace egraph
