#include "egraph/gbs.hpp"

#include <algorithm>

#include "egraph/error.hpp"
#include "egraph/hungarian.hpp"

namespace egraph {

std::string edge_sentence(const Edge& e) { return e.head.label() + " " + e.relation + " " + e.tail.label(); }

MatchScore edge_match(const ExplanationGraph& pred, const ExplanationGraph& gold, EdgeSimilarityScorer& scorer) {
  std::vector<std::string> pred_sentences, gold_sentences;
  for (const Edge& e : pred.edges()) pred_sentences.push_back(edge_sentence(e));
  for (const Edge& e : gold.edges()) gold_sentences.push_back(edge_sentence(e));

  ScoreMatrix weights(pred_sentences.size(), gold_sentences.size());
  for (std::size_t i = 0; i < pred_sentences.size(); ++i) {
    for (std::size_t j = 0; j < gold_sentences.size(); ++j) {
      weights(i, j) = std::clamp(scorer.score(pred_sentences[i], gold_sentences[j]), 0.0, 1.0);
    }
  }
  const double matched = max_weight_assignment(weights).weight;

  MatchScore s;
  s.precision = matched / static_cast<double>(pred_sentences.size());
  s.recall = matched / static_cast<double>(gold_sentences.size());
  s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

double gbs(const ExplanationGraph& pred, std::span<const ExplanationGraph> golds, EdgeSimilarityScorer& scorer) {
  if (golds.empty()) throw MetricError(MetricError::Kind::bad_input, "no gold graphs");
  double best = 0.0;
  for (const auto& gold : golds) best = std::max(best, edge_match(pred, gold, scorer).f1);
  return best;
}

}  // namespace egraph
