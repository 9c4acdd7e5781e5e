#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "egraph/graph.hpp"
#include "egraph/relation.hpp"

namespace egraph {

struct StanceTexts {
  std::string belief;
  std::string argument;
};

enum class PerturbOp { add_edge, remove_edge, replace_relation };

// Applies `ops` (1..3) random edit operators, each chosen uniformly among
// adding an edge between existing nodes, removing an edge and replacing an
// edge's relation. A draw that would leave the graph structurally invalid is
// rejected and redrawn. With `texts` the full validator (including the
// internal-concept minimums) must pass after every step; without it all
// checks except the internal-concept minimums must pass.
//
// The result differs from the input in at least one edge. Throws
// PerturbationError when the retry budget runs out.
ExplanationGraph perturb(const ExplanationGraph& g, const RelationVocabulary& vocab, int ops,
                         std::uint64_t seed, const std::optional<StanceTexts>& texts = std::nullopt);

}  // namespace egraph
