#pragma once

// Shared fixtures and random generators for the test suites.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "egraph/graph.hpp"
#include "egraph/metrics.hpp"
#include "egraph/relation.hpp"
#include "egraph/rng.hpp"
#include "support/oracles.hpp"

namespace egraph::testing {

inline const char* kFactoryBelief = "Factory farming should be banned";
inline const char* kFactoryArgument = "Factory farming feeds millions";
inline const char* kFactoryGraph =
    "(factory farming; causes; food)(millions; desires; food)"
    "(factory farming; has context; necessary)(necessary; not desires; banned)";

inline ExplanationGraph factory_graph() { return parse_graph(kFactoryGraph); }

// Random weakly connected DAG with `nodes` nodes and `edges` edges
// (nodes - 1 <= edges). Node labels are "n<k>" drawn from a pool so that
// separate calls share labels.
inline ExplanationGraph random_connected_dag(Rng& rng, std::size_t nodes, std::size_t edges,
                                             const RelationVocabulary& vocab,
                                             std::size_t label_pool = 12) {
  std::vector<std::size_t> labels;
  while (labels.size() < nodes) {
    std::size_t l = rng.below(label_pool);
    bool seen = false;
    for (std::size_t x : labels) seen = seen || x == l;
    if (!seen) labels.push_back(l);
  }
  auto name = [&](std::size_t i) { return "n" + std::to_string(labels[i]); };
  // Position i in `labels` is also the topological rank, so every edge goes
  // from lower to higher rank.
  std::vector<Edge> out;
  std::vector<std::pair<std::size_t, std::size_t>> used;
  auto relation = [&] { return vocab.at(rng.below(vocab.size())).name; };
  for (std::size_t v = 1; v < nodes; ++v) {
    std::size_t u = rng.below(v);
    out.emplace_back(name(u), relation(), name(v));
    used.emplace_back(u, v);
  }
  while (out.size() < edges) {
    std::size_t a = rng.below(nodes), b = rng.below(nodes);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    bool dup = false;
    for (auto p : used) dup = dup || (p.first == a && p.second == b);
    if (dup) continue;
    used.emplace_back(a, b);
    out.emplace_back(name(a), relation(), name(b));
  }
  // Shuffle edge order.
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return ExplanationGraph(std::move(out));
}

// Random graph with no structural guarantees: up to `max_nodes` labels,
// `edges` distinct triples, may contain cycles and be disconnected.
inline ExplanationGraph random_graph(Rng& rng, std::size_t max_nodes, std::size_t edges,
                                     const std::vector<std::string>& relations,
                                     const std::vector<std::string>& labels) {
  std::vector<Edge> out;
  std::vector<std::string> keys;
  std::size_t guard = 0;
  while (out.size() < edges && guard++ < 1000) {
    std::size_t a = rng.below(max_nodes), b = rng.below(max_nodes);
    if (a == b) continue;
    Edge e(labels[a % labels.size()], relations[rng.below(relations.size())], labels[b % labels.size()]);
    if (e.head == e.tail) continue;
    bool dup = false;
    for (const auto& k : keys) dup = dup || k == e.triple_key();
    if (dup) continue;
    keys.push_back(e.triple_key());
    out.push_back(std::move(e));
  }
  return ExplanationGraph(std::move(out));
}

// Structurally valid sample: two belief concepts, two argument concepts and
// up to three external concepts joined into a random connected DAG with 3..8
// edges. Words are unique per index.
inline Sample synthetic_sample(std::size_t index, Rng& rng, const RelationVocabulary& vocab) {
  const std::string w = "w" + std::to_string(index);
  Sample s;
  s.id = "s" + std::to_string(1000 + index);
  s.belief = w + "alpha " + w + "beta should be allowed";
  s.argument = w + "gamma " + w + "delta helps people";
  s.gold_stance = rng.below(2) == 0 ? Stance::support : Stance::counter;
  std::vector<std::string> labels = {w + "alpha", w + "beta", w + "gamma", w + "delta"};
  const std::size_t externals = rng.below(4);
  for (std::size_t k = 0; k < externals; ++k) labels.push_back(w + "ext" + std::to_string(k) + " thing");
  for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng.below(i)]);
  const std::size_t n = labels.size();
  const std::size_t max_edges = std::min<std::size_t>(8, n * (n - 1) / 2);
  const std::size_t edges = std::max<std::size_t>(3, n - 1) + rng.below(max_edges - std::max<std::size_t>(3, n - 1) + 1);
  std::vector<Edge> out;
  std::vector<std::pair<std::size_t, std::size_t>> used;
  auto relation = [&] { return vocab.at(rng.below(vocab.size())).name; };
  for (std::size_t v = 1; v < n; ++v) {
    std::size_t u = rng.below(v);
    out.emplace_back(labels[u], relation(), labels[v]);
    used.emplace_back(u, v);
  }
  while (out.size() < edges) {
    std::size_t a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (std::find(used.begin(), used.end(), std::make_pair(a, b)) != used.end()) continue;
    used.emplace_back(a, b);
    out.emplace_back(labels[a], relation(), labels[b]);
  }
  s.gold_graphs.emplace_back(std::move(out));
  return s;
}

inline std::vector<Sample> synthetic_corpus(std::size_t count, std::uint64_t seed, const RelationVocabulary& vocab) {
  Rng rng(seed);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(synthetic_sample(i, rng, vocab));
  return out;
}

inline std::vector<Prediction> gold_predictions(const std::vector<Sample>& samples) {
  std::vector<Prediction> out;
  for (const auto& s : samples) out.push_back({s.id, s.gold_stance, serialize_graph(s.gold_graphs.front())});
  return out;
}

inline oracle::LabeledGraph to_labeled(const ExplanationGraph& g) {
  oracle::LabeledGraph out;
  for (const auto& c : g.nodes()) out.nodes.push_back(c.key());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    out.arcs.push_back({g.endpoints()[i].first, g.endpoints()[i].second, g.edges()[i].relation_key()});
  }
  return out;
}

// Small graphs over a tiny label alphabet so that label collisions are common.
inline ExplanationGraph small_random_graph(Rng& rng) {
  static const std::vector<std::string> labels = {"a", "b", "c", "d", "e"};
  static const std::vector<std::string> relations = {"causes", "not causes", "desires"};
  std::vector<std::string> picked = labels;
  for (std::size_t i = picked.size(); i > 1; --i) std::swap(picked[i - 1], picked[rng.below(i)]);
  const std::size_t nodes = 2 + rng.below(3);  // 2..4
  picked.resize(nodes);
  return random_graph(rng, nodes, 1 + rng.below(5), relations, picked);
}

}  // namespace egraph::testing
