#include "egraph/metrics.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "egraph/error.hpp"
#include "egraph/gbs.hpp"
#include "egraph/ged.hpp"
#include "egraph/validate.hpp"

namespace egraph {

std::string_view to_string(Stance s) { return s == Stance::support ? "support" : "counter"; }

std::string_view to_string(GraphLabel l) {
  switch (l) {
    case GraphLabel::incorrect: return "incorrect";
    case GraphLabel::support: return "support";
    case GraphLabel::counter: return "counter";
  }
  return "incorrect";
}

std::optional<Stance> parse_stance(std::string_view s) {
  if (s == "support") return Stance::support;
  if (s == "counter") return Stance::counter;
  return std::nullopt;
}

std::optional<GraphLabel> parse_graph_label(std::string_view s) {
  if (s == "incorrect") return GraphLabel::incorrect;
  if (s == "support") return GraphLabel::support;
  if (s == "counter") return GraphLabel::counter;
  return std::nullopt;
}

double edge_importance(const Sample& sample, const ExplanationGraph& pred, StanceScorer& scorer) {
  const auto& edges = pred.edges();
  const double full = scorer.probability(sample.belief, sample.argument, serialize_graph(pred), sample.gold_stance);
  std::size_t important = 0;
  std::vector<Edge> reduced;
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    reduced.clear();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i != skip) reduced.push_back(edges[i]);
    }
    const double without =
        scorer.probability(sample.belief, sample.argument, serialize_edges(reduced), sample.gold_stance);
    if (without < full) ++important;
  }
  return static_cast<double>(important) / static_cast<double>(edges.size());
}

bool semantic_correct(const Sample& sample, const ExplanationGraph& pred, GraphStanceClassifier& classifier) {
  return classifier.classify(sample.belief, serialize_graph(pred)) == as_label(sample.gold_stance);
}

SampleOutcome evaluate_sample(const Sample& sample, const Prediction& prediction,
                              const RelationVocabulary& vocab, Scorers scorers, GedAggregation aggregation) {
  if (sample.gold_graphs.empty()) {
    throw MetricError(MetricError::Kind::bad_input, "sample " + sample.id + " has no gold graph");
  }
  SampleOutcome out;
  out.id = sample.id;
  out.stance_correct = prediction.stance == sample.gold_stance;

  std::optional<ExplanationGraph> graph;
  try {
    graph = parse_graph(prediction.graph_text);
  } catch (const ParseError&) {
    graph.reset();
  }
  out.structurally_correct = graph && validate(*graph, sample.belief, sample.argument, vocab).overall();
  if (!out.gated()) return out;

  out.seca_label = scorers.classifier.classify(sample.belief, serialize_graph(*graph));
  out.seca_correct = *out.seca_label == as_label(sample.gold_stance);
  out.gbs = gbs(*graph, sample.gold_graphs, scorers.similarity);
  if (aggregation == GedAggregation::first_gold) {
    out.ged = ged(*graph, sample.gold_graphs.front());
  } else {
    out.ged = 1.0;
    for (const auto& gold : sample.gold_graphs) out.ged = std::min(out.ged, ged(*graph, gold));
  }
  out.ea = edge_importance(sample, *graph, scorers.stance);
  return out;
}

Aggregates aggregate(std::span<const SampleOutcome> outcomes) {
  Aggregates a;
  if (outcomes.empty()) return a;
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return outcomes[x].id < outcomes[y].id; });
  double sa = 0, stca = 0, seca = 0, gbs_sum = 0, ged_sum = 0, ea = 0;
  for (std::size_t i : order) {
    const auto& o = outcomes[i];
    sa += o.stance_correct ? 1.0 : 0.0;
    stca += o.gated() ? 1.0 : 0.0;
    seca += (o.gated() && o.seca_correct) ? 1.0 : 0.0;
    gbs_sum += o.gbs;
    ged_sum += o.ged;
    ea += o.ea;
  }
  const double n = static_cast<double>(outcomes.size());
  a.sa = sa / n;
  a.stca = stca / n;
  a.seca = seca / n;
  a.gbs = gbs_sum / n;
  a.ged = ged_sum / n;
  a.ea = ea / n;
  return a;
}

namespace {

// Index of the prediction for each sample, in sample order.
std::vector<std::size_t> align(std::span<const Sample> samples, std::span<const Prediction> predictions) {
  std::unordered_map<std::string, std::size_t> sample_index;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!sample_index.emplace(samples[i].id, i).second) {
      throw MetricError(MetricError::Kind::duplicate_id, "duplicate sample id " + samples[i].id);
    }
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pred_of(samples.size(), kNone);
  for (std::size_t p = 0; p < predictions.size(); ++p) {
    auto it = sample_index.find(predictions[p].id);
    if (it == sample_index.end()) {
      throw MetricError(MetricError::Kind::unknown_id, "prediction for unknown id " + predictions[p].id);
    }
    if (pred_of[it->second] != kNone) {
      throw MetricError(MetricError::Kind::duplicate_id, "duplicate prediction id " + predictions[p].id);
    }
    pred_of[it->second] = p;
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (pred_of[i] == kNone) {
      throw MetricError(MetricError::Kind::missing_prediction, "no prediction for id " + samples[i].id);
    }
  }
  return pred_of;
}

class LockedSimilarity : public EdgeSimilarityScorer {
 public:
  LockedSimilarity(EdgeSimilarityScorer& inner, std::mutex& mutex) : inner_(inner), mutex_(mutex) {}
  double score(std::string_view a, std::string_view b) override {
    if (inner_.reentrant()) return inner_.score(a, b);
    std::lock_guard lock(mutex_);
    return inner_.score(a, b);
  }

 private:
  EdgeSimilarityScorer& inner_;
  std::mutex& mutex_;
};

class LockedStance : public StanceScorer {
 public:
  LockedStance(StanceScorer& inner, std::mutex& mutex) : inner_(inner), mutex_(mutex) {}
  double probability(std::string_view belief, std::string_view argument, std::string_view graph,
                     Stance target) override {
    if (inner_.reentrant()) return inner_.probability(belief, argument, graph, target);
    std::lock_guard lock(mutex_);
    return inner_.probability(belief, argument, graph, target);
  }

 private:
  StanceScorer& inner_;
  std::mutex& mutex_;
};

class LockedClassifier : public GraphStanceClassifier {
 public:
  LockedClassifier(GraphStanceClassifier& inner, std::mutex& mutex) : inner_(inner), mutex_(mutex) {}
  GraphLabel classify(std::string_view belief, std::string_view graph) override {
    if (inner_.reentrant()) return inner_.classify(belief, graph);
    std::lock_guard lock(mutex_);
    return inner_.classify(belief, graph);
  }

 private:
  GraphStanceClassifier& inner_;
  std::mutex& mutex_;
};

}  // namespace

MetricReport evaluate_corpus(std::span<const Sample> samples, std::span<const Prediction> predictions,
                             const RelationVocabulary& vocab, Scorers scorers, const EvalConfig& config) {
  const auto pred_of = align(samples, predictions);
  // Non-reentrant scorers may share one backend, so they share one lock.
  std::mutex scorer_mutex;
  LockedSimilarity similarity(scorers.similarity, scorer_mutex);
  LockedStance stance(scorers.stance, scorer_mutex);
  LockedClassifier classifier(scorers.classifier, scorer_mutex);
  Scorers guarded{similarity, stance, classifier};

  MetricReport report;
  report.per_sample.resize(samples.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(samples.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      report.per_sample[i] =
          evaluate_sample(samples[i], predictions[pred_of[i]], vocab, guarded, config.ged_aggregation);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  report.aggregate = aggregate(report.per_sample);
  return report;
}

MetricReport evaluate_corpus_serial(std::span<const Sample> samples, std::span<const Prediction> predictions,
                                    const RelationVocabulary& vocab, Scorers scorers, const EvalConfig& config) {
  const auto pred_of = align(samples, predictions);
  MetricReport report;
  report.per_sample.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    report.per_sample.push_back(
        evaluate_sample(samples[i], predictions[pred_of[i]], vocab, scorers, config.ged_aggregation));
  }
  report.aggregate = aggregate(report.per_sample);
  return report;
}

}  // namespace egraph
