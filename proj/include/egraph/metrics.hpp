#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egraph/graph.hpp"
#include "egraph/relation.hpp"
#include "egraph/scorers.hpp"

namespace egraph {

struct Sample {
  std::string id;
  std::string belief;
  std::string argument;
  Stance gold_stance = Stance::support;
  std::vector<ExplanationGraph> gold_graphs;  // one or two
};

struct Prediction {
  std::string id;
  Stance stance = Stance::support;
  std::string graph_text;  // may be malformed
};

// Fraction of edges whose removal strictly lowers the scorer's probability of
// the gold stance. The reduced graph is serialized as-is, even when removing
// the edge disconnects it.
double edge_importance(const Sample& sample, const ExplanationGraph& pred, StanceScorer& scorer);

// True iff the classifier labels (belief, serialized graph) with the gold stance.
bool semantic_correct(const Sample& sample, const ExplanationGraph& pred, GraphStanceClassifier& classifier);

enum class GedAggregation { min_over_golds, first_gold };

struct EvalConfig {
  GedAggregation ged_aggregation = GedAggregation::min_over_golds;
  int threads = 0;  // 0: OpenMP default
};

struct Scorers {
  EdgeSimilarityScorer& similarity;
  StanceScorer& stance;
  GraphStanceClassifier& classifier;
};

struct SampleOutcome {
  std::string id;
  bool stance_correct = false;
  bool structurally_correct = false;  // graph parses and passes validation
  std::optional<GraphLabel> seca_label;  // set only for samples that pass both gates
  bool seca_correct = false;
  double gbs = 0.0;
  double ged = 1.0;
  double ea = 0.0;

  bool gated() const { return stance_correct && structurally_correct; }
};

struct Aggregates {
  double sa = 0.0;
  double stca = 0.0;
  double seca = 0.0;
  double gbs = 0.0;
  double ged = 1.0;
  double ea = 0.0;
};

// Corpus aggregates are fractions in [0, 1].
struct MetricReport {
  std::vector<SampleOutcome> per_sample;  // in sample input order
  Aggregates aggregate;
};

// Scores one sample. Gated-out samples get gbs 0, ged 1, ea 0, seca false.
SampleOutcome evaluate_sample(const Sample& sample, const Prediction& prediction,
                              const RelationVocabulary& vocab, Scorers scorers, GedAggregation aggregation);

// Means over per-sample outcomes, summed in id order so the result does not
// depend on input order.
Aggregates aggregate(std::span<const SampleOutcome> outcomes);

// Row-parallel corpus evaluation (OpenMP). Scorers that are not reentrant are
// called under a lock. Predictions are matched to samples by id; throws
// MetricError on unknown, duplicate or missing ids.
MetricReport evaluate_corpus(std::span<const Sample> samples, std::span<const Prediction> predictions,
                             const RelationVocabulary& vocab, Scorers scorers, const EvalConfig& config = {});

// Single-threaded reference with identical semantics.
MetricReport evaluate_corpus_serial(std::span<const Sample> samples, std::span<const Prediction> predictions,
                                    const RelationVocabulary& vocab, Scorers scorers,
                                    const EvalConfig& config = {});

}  // namespace egraph
