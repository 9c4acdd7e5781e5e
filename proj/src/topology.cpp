#include "egraph/topology.hpp"

#include <algorithm>
#include <numeric>

#include "egraph/error.hpp"

namespace egraph {

namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// Kahn order; shorter than node_count when a cycle exists.
std::vector<std::size_t> kahn_order(std::size_t n, const EdgeList& edges) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (auto [h, t] : edges) {
    out[h].push_back(t);
    ++indegree[t];
  }
  std::vector<std::size_t> order;
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return order;
}

}  // namespace

bool weakly_connected(std::size_t n, const EdgeList& edges) {
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (auto [h, t] : edges) {
    std::size_t a = find(h), b = find(t);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool is_acyclic(std::size_t n, const EdgeList& edges) { return kahn_order(n, edges).size() == n; }

bool weakly_connected(const ExplanationGraph& g) {
  return weakly_connected(g.node_count(), g.endpoints());
}

bool is_acyclic(const ExplanationGraph& g) { return is_acyclic(g.node_count(), g.endpoints()); }

std::optional<std::size_t> longest_path_edges(const ExplanationGraph& g) {
  const auto order = kahn_order(g.node_count(), g.endpoints());
  if (order.size() != g.node_count()) return std::nullopt;
  std::vector<std::vector<std::size_t>> out(g.node_count());
  for (auto [h, t] : g.endpoints()) out[h].push_back(t);
  std::vector<std::size_t> depth(g.node_count(), 0);
  for (std::size_t v : order) {
    for (std::size_t w : out[v]) depth[w] = std::max(depth[w], depth[v] + 1);
  }
  return *std::max_element(depth.begin(), depth.end());
}

void require_connected_dag(const ExplanationGraph& g) {
  if (!is_acyclic(g)) throw GraphError(GraphError::Kind::not_a_dag, "graph contains a directed cycle");
  if (!weakly_connected(g)) throw GraphError(GraphError::Kind::disconnected, "graph is not connected");
}

}  // namespace egraph
