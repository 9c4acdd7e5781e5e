#include "egraph/validate.hpp"

#include <algorithm>

#include "egraph/topology.hpp"

namespace egraph {

std::vector<std::string_view> ValidationReport::failures() const {
  std::vector<std::string_view> out;
  if (!relation_in_vocab) out.push_back("relation_in_vocab");
  if (!concepts_max_three_words) out.push_back("concepts_max_three_words");
  if (!edge_count_in_range) out.push_back("edge_count_in_range");
  if (!min_two_belief_concepts) out.push_back("min_two_belief_concepts");
  if (!min_two_argument_concepts) out.push_back("min_two_argument_concepts");
  if (!connected) out.push_back("connected");
  if (!acyclic) out.push_back("acyclic");
  return out;
}

ValidationReport validate(const ExplanationGraph& g, std::string_view belief,
                          std::string_view argument, const RelationVocabulary& vocab) {
  const auto origins = classify_origins(g, belief, argument);
  return validate(g, origins, vocab);
}

ValidationReport validate(const ExplanationGraph& g, std::span<const NodeOrigin> origins,
                          const RelationVocabulary& vocab) {
  ValidationReport r;
  r.relation_in_vocab = std::all_of(g.edges().begin(), g.edges().end(),
                                    [&](const Edge& e) { return vocab.contains(e.relation); });
  r.concepts_max_three_words =
      std::all_of(g.nodes().begin(), g.nodes().end(),
                  [](const Concept& c) { return c.word_count() <= kMaxConceptWords; });
  r.edge_count_in_range = g.edge_count() >= kMinEdges && g.edge_count() <= kMaxEdges;
  const auto belief_count = std::count_if(origins.begin(), origins.end(), counts_for_belief);
  const auto argument_count = std::count_if(origins.begin(), origins.end(), counts_for_argument);
  r.min_two_belief_concepts = belief_count >= static_cast<std::ptrdiff_t>(kMinInternalConcepts);
  r.min_two_argument_concepts = argument_count >= static_cast<std::ptrdiff_t>(kMinInternalConcepts);
  r.connected = weakly_connected(g);
  r.acyclic = is_acyclic(g);
  return r;
}

}  // namespace egraph
