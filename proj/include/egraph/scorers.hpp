#pragma once

#include <optional>
#include <string_view>

namespace egraph {

enum class Stance { support, counter };
enum class GraphLabel { incorrect, support, counter };

std::string_view to_string(Stance s);
std::string_view to_string(GraphLabel l);
std::optional<Stance> parse_stance(std::string_view s);
std::optional<GraphLabel> parse_graph_label(std::string_view s);

inline GraphLabel as_label(Stance s) { return s == Stance::support ? GraphLabel::support : GraphLabel::counter; }

// Similarity in [0, 1] between two edge sentences. Implementations must give
// score(s, s) = 1 and be symmetric.
class EdgeSimilarityScorer {
 public:
  virtual ~EdgeSimilarityScorer() = default;
  virtual double score(std::string_view a, std::string_view b) = 0;
  // Whether concurrent calls on one instance are safe.
  virtual bool reentrant() const { return true; }
};

// Probability in [0, 1] that (belief, argument, graph) expresses `target`.
class StanceScorer {
 public:
  virtual ~StanceScorer() = default;
  virtual double probability(std::string_view belief, std::string_view argument,
                             std::string_view graph_text, Stance target) = 0;
  virtual bool reentrant() const { return true; }
};

// Labels a belief-graph pair as incorrect, support or counter.
class GraphStanceClassifier {
 public:
  virtual ~GraphStanceClassifier() = default;
  virtual GraphLabel classify(std::string_view belief, std::string_view graph_text) = 0;
  virtual bool reentrant() const { return true; }
};

}  // namespace egraph
