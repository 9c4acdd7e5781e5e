#include "egraph/plugins.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "egraph/error.hpp"
#include "egraph/graph.hpp"
#include "egraph/origins.hpp"
#include "egraph/relation.hpp"
#include "egraph/text.hpp"
#include "egraph/topology.hpp"
#include "egraph/validate.hpp"

namespace egraph {

double token_f1(std::string_view a, std::string_view b) {
  const auto ta = text::split_whitespace(text::to_lower(a));
  const auto tb = text::split_whitespace(text::to_lower(b));
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : ta) ++counts[t];
  int overlap = 0;
  for (const auto& t : tb) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(ta.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(tb.size());
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

bool negated_text(std::string_view s) {
  static const std::set<std::string> kNegations = {"not", "no", "never", "cannot", "nothing", "nobody"};
  for (const auto& token : text::split_whitespace(text::to_lower(s))) {
    std::string word;
    for (char c : token) {
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '\'') word.push_back(c);
    }
    if (kNegations.count(word) || word.ends_with("n't")) return true;
  }
  return false;
}

}  // namespace

Stance polarity_stance(std::string_view belief, const ExplanationGraph& g) {
  bool flipped = negated_text(belief);
  for (const Edge& e : g.edges()) {
    if (is_polarity_flipping(e.relation)) flipped = !flipped;
  }
  return flipped ? Stance::counter : Stance::support;
}

double LexicalStanceScorer::probability(std::string_view belief, std::string_view argument,
                                        std::string_view graph_text, Stance target) {
  std::optional<ExplanationGraph> g;
  try {
    g = parse_graph(graph_text);
  } catch (const ParseError&) {
    return 0.5;
  }
  std::set<std::string> context;
  for (auto& t : text::match_tokens(belief)) context.insert(std::move(t));
  for (auto& t : text::match_tokens(argument)) context.insert(std::move(t));
  std::set<std::string> covered;
  for (const Concept& c : g->nodes()) {
    for (auto& t : text::match_tokens(c.label())) {
      if (context.count(t)) covered.insert(std::move(t));
    }
  }
  const double coverage =
      context.empty() ? 0.0 : static_cast<double>(covered.size()) / static_cast<double>(context.size());
  const double confidence = 0.5 + 0.45 * coverage;
  return polarity_stance(belief, *g) == target ? confidence : 1.0 - confidence;
}

GraphLabel RuleBasedClassifier::classify(std::string_view belief, std::string_view graph_text) {
  std::optional<ExplanationGraph> g;
  try {
    g = parse_graph(graph_text);
  } catch (const ParseError&) {
    return GraphLabel::incorrect;
  }
  if (g->edge_count() < kMinEdges || g->edge_count() > kMaxEdges) return GraphLabel::incorrect;
  if (!weakly_connected(*g) || !is_acyclic(*g)) return GraphLabel::incorrect;
  const bool touches_belief = std::any_of(g->nodes().begin(), g->nodes().end(),
                                          [&](const Concept& c) { return occurs_in(c.label(), belief); });
  if (!touches_belief) return GraphLabel::incorrect;
  return as_label(polarity_stance(belief, *g));
}

}  // namespace egraph
