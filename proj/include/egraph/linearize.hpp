#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "egraph/graph.hpp"

namespace egraph {

enum class EdgeOrdering { dfs, bfs, topological, random };

std::optional<EdgeOrdering> parse_ordering(std::string_view name);
std::string_view to_string(EdgeOrdering ordering);

// Reorders the edges of a connected DAG.
//
// Traversals start from the in-degree-0 nodes in label order and expand
// outgoing edges in tail-label order. dfs and bfs emit an edge when it is
// traversed, including edges that lead to already visited nodes. topological
// runs Kahn's algorithm with a label-ordered ready set and emits each removed
// node's outgoing edges. random is a seeded uniform shuffle.
//
// Throws GraphError if g has a cycle or is disconnected.
std::vector<Edge> linearize(const ExplanationGraph& g, EdgeOrdering ordering, std::uint64_t seed = 0);

}  // namespace egraph
