#pragma once

#include <cstddef>

#include "egraph/graph.hpp"

namespace egraph {

// Largest edge count per graph for which the exact search is offered.
inline constexpr std::size_t kGedMaxEdges = 8;

struct GedResult {
  int cost = 0;        // minimum number of unit-cost edit operations
  int normalizer = 0;  // |V1| + |V2| + |E1| + |E2|
  double normalized() const { return normalizer == 0 ? 0.0 : static_cast<double>(cost) / normalizer; }
};

// Exact graph edit distance under unit costs: node insert, delete and relabel
// cost 1; edge insert, delete and relabel cost 1. Node labels compare as
// normalized concepts, edge labels as normalized relation names.
//
// Depth-first branch and bound over node mappings from `a` to `b`, with an
// admissible bound from label multiset mismatches on the unmapped nodes and
// on the edges that touch them.
//
// Throws SizeLimitError if either graph has more than kGedMaxEdges edges.
GedResult graph_edit_distance(const ExplanationGraph& a, const ExplanationGraph& b);

// Normalized distance in [0, 1].
double ged(const ExplanationGraph& pred, const ExplanationGraph& gold);

}  // namespace egraph
