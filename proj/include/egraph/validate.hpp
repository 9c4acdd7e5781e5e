#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "egraph/graph.hpp"
#include "egraph/origins.hpp"
#include "egraph/relation.hpp"

namespace egraph {

inline constexpr std::size_t kMinEdges = 3;
inline constexpr std::size_t kMaxEdges = 8;
inline constexpr std::size_t kMaxConceptWords = 3;
inline constexpr std::size_t kMinInternalConcepts = 2;

struct ValidationReport {
  bool relation_in_vocab = false;
  bool concepts_max_three_words = false;
  bool edge_count_in_range = false;
  bool min_two_belief_concepts = false;
  bool min_two_argument_concepts = false;
  bool connected = false;
  bool acyclic = false;

  bool overall() const {
    return relation_in_vocab && concepts_max_three_words && edge_count_in_range &&
           min_two_belief_concepts && min_two_argument_concepts && connected && acyclic;
  }

  // Names of the checks that failed, in declaration order.
  std::vector<std::string_view> failures() const;
};

ValidationReport validate(const ExplanationGraph& g, std::string_view belief,
                          std::string_view argument, const RelationVocabulary& vocab);

// Same checks with node origins supplied directly (aligned with g.nodes()).
ValidationReport validate(const ExplanationGraph& g, std::span<const NodeOrigin> origins,
                          const RelationVocabulary& vocab);

}  // namespace egraph
