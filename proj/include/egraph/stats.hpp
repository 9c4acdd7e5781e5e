#pragma once

#include <cstddef>
#include <string_view>

#include "egraph/graph.hpp"

namespace egraph {

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t external_node_count = 0;
  std::size_t depth = 0;  // edges on the longest directed path
  bool is_linear = false;  // the edges form one directed chain
};

// Throws GraphError (not_a_dag) if g has a directed cycle.
GraphStats compute_stats(const ExplanationGraph& g, std::string_view belief, std::string_view argument);

// True when every node has in- and out-degree at most one and the graph is
// connected, i.e. a single directed chain. Converging or diverging edges
// (a V-structure) make a graph non-linear.
bool is_linear_chain(const ExplanationGraph& g);

}  // namespace egraph
