#pragma once

#include <span>
#include <string>

#include "egraph/graph.hpp"
#include "egraph/scorers.hpp"

namespace egraph {

// "head relation tail", single spaces, relation verbatim.
std::string edge_sentence(const Edge& e);

struct MatchScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision/recall/F1 of the best one-to-one assignment between predicted
// and gold edges, with pairwise weights from the scorer.
MatchScore edge_match(const ExplanationGraph& pred, const ExplanationGraph& gold, EdgeSimilarityScorer& scorer);

// Graph-level match score: best F1 across the gold graphs. Throws
// MetricError if `golds` is empty.
double gbs(const ExplanationGraph& pred, std::span<const ExplanationGraph> golds, EdgeSimilarityScorer& scorer);

}  // namespace egraph
