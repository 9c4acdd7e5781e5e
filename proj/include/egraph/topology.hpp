#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "egraph/graph.hpp"

namespace egraph {

// Weak connectivity of the node set under the given directed edges.
bool weakly_connected(std::size_t node_count,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges);
bool is_acyclic(std::size_t node_count,
                const std::vector<std::pair<std::size_t, std::size_t>>& edges);

bool weakly_connected(const ExplanationGraph& g);
bool is_acyclic(const ExplanationGraph& g);

// Number of edges on the longest directed path; nullopt on a cycle.
std::optional<std::size_t> longest_path_edges(const ExplanationGraph& g);

// Throws GraphError unless g is a weakly connected DAG.
void require_connected_dag(const ExplanationGraph& g);

}  // namespace egraph
