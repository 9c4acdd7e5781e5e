#pragma once

#include <string_view>

#include "egraph/scorers.hpp"

namespace egraph {

class ExplanationGraph;

// Multiset-overlap F1 of lowercased whitespace tokens. Two empty strings
// score 1.
double token_f1(std::string_view a, std::string_view b);

class TokenF1Scorer : public EdgeSimilarityScorer {
 public:
  double score(std::string_view a, std::string_view b) override { return token_f1(a, b); }
};

// 1 for identical sentences, 0 otherwise.
class ExactMatchScorer : public EdgeSimilarityScorer {
 public:
  double score(std::string_view a, std::string_view b) override { return a == b ? 1.0 : 0.0; }
};

// Stance implied by a graph read as a chain of polarity flips: every negated
// relation and every "antonym of" flips the stance, and a negated belief
// flips it once more. An even number of flips means support.
Stance polarity_stance(std::string_view belief, const ExplanationGraph& g);

// Deterministic stand-in for a trained stance model. The graph's polarity
// picks the favoured stance; confidence grows with the share of belief and
// argument tokens that the graph's concepts cover, from 0.5 (nothing
// covered) to 0.95 (everything covered). Unparseable graphs score 0.5.
class LexicalStanceScorer : public StanceScorer {
 public:
  double probability(std::string_view belief, std::string_view argument, std::string_view graph_text,
                     Stance target) override;
};

// Deterministic stand-in for a trained graph classifier. Returns incorrect
// when the graph does not parse, is not a connected DAG with 3 to 8 edges, or
// mentions no belief concept; otherwise the polarity stance.
class RuleBasedClassifier : public GraphStanceClassifier {
 public:
  GraphLabel classify(std::string_view belief, std::string_view graph_text) override;
};

}  // namespace egraph
