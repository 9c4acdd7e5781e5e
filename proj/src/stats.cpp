#include "egraph/stats.hpp"

#include <algorithm>

#include "egraph/error.hpp"
#include "egraph/origins.hpp"
#include "egraph/topology.hpp"

namespace egraph {

bool is_linear_chain(const ExplanationGraph& g) {
  if (g.edge_count() + 1 != g.node_count()) return false;
  std::vector<std::size_t> indegree(g.node_count(), 0), outdegree(g.node_count(), 0);
  for (auto [h, t] : g.endpoints()) {
    ++outdegree[h];
    ++indegree[t];
  }
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (indegree[v] > 1 || outdegree[v] > 1) return false;
  }
  return weakly_connected(g);
}

GraphStats compute_stats(const ExplanationGraph& g, std::string_view belief, std::string_view argument) {
  auto depth = longest_path_edges(g);
  if (!depth) throw GraphError(GraphError::Kind::not_a_dag, "graph contains a directed cycle");
  GraphStats s;
  s.node_count = g.node_count();
  s.edge_count = g.edge_count();
  const auto origins = classify_origins(g, belief, argument);
  s.external_node_count = static_cast<std::size_t>(
      std::count(origins.begin(), origins.end(), NodeOrigin::external));
  s.depth = *depth;
  s.is_linear = is_linear_chain(g);
  return s;
}

}  // namespace egraph
