#include "egraph/perturb.hpp"

#include <algorithm>
#include <array>

#include "egraph/error.hpp"
#include "egraph/rng.hpp"
#include "egraph/validate.hpp"

namespace egraph {

namespace {

constexpr int kAttemptsPerOp = 64;
constexpr int kRestarts = 16;

bool structurally_valid(const ExplanationGraph& g, const RelationVocabulary& vocab,
                        const std::optional<StanceTexts>& texts) {
  if (texts) return validate(g, texts->belief, texts->argument, vocab).overall();
  std::vector<NodeOrigin> unused(g.node_count(), NodeOrigin::both);
  return validate(g, unused, vocab).overall();
}

std::vector<std::string> triple_set(const ExplanationGraph& g) {
  std::vector<std::string> keys;
  for (const Edge& e : g.edges()) keys.push_back(e.triple_key());
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::optional<ExplanationGraph> try_build(std::vector<Edge> edges) {
  try {
    return ExplanationGraph(std::move(edges));
  } catch (const GraphError&) {
    return std::nullopt;
  }
}

std::optional<ExplanationGraph> apply_op(const ExplanationGraph& g, PerturbOp op,
                                         const RelationVocabulary& vocab, Rng& rng) {
  std::vector<Edge> edges = g.edges();
  switch (op) {
    case PerturbOp::add_edge: {
      if (g.node_count() < 2) return std::nullopt;
      std::size_t h = rng.below(g.node_count());
      std::size_t t = rng.below(g.node_count() - 1);
      if (t >= h) ++t;
      const Relation& r = vocab.at(rng.below(vocab.size()));
      edges.emplace_back(g.nodes()[h].label(), r.name, g.nodes()[t].label());
      return try_build(std::move(edges));
    }
    case PerturbOp::remove_edge: {
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(rng.below(edges.size())));
      if (edges.empty()) return std::nullopt;
      return try_build(std::move(edges));
    }
    case PerturbOp::replace_relation: {
      if (vocab.size() < 2) return std::nullopt;
      Edge& e = edges[rng.below(edges.size())];
      const std::ptrdiff_t current = vocab.index_of(e.relation);
      std::size_t pick;
      if (current < 0) {
        pick = rng.below(vocab.size());
      } else {
        pick = rng.below(vocab.size() - 1);
        if (pick >= static_cast<std::size_t>(current)) ++pick;
      }
      e = Edge(e.head.label(), vocab.at(pick).name, e.tail.label());
      return try_build(std::move(edges));
    }
  }
  return std::nullopt;
}

}  // namespace

ExplanationGraph perturb(const ExplanationGraph& g, const RelationVocabulary& vocab, int ops,
                         std::uint64_t seed, const std::optional<StanceTexts>& texts) {
  if (ops < 1 || ops > 3) throw PerturbationError("operator count must be in 1..3");
  constexpr std::array<PerturbOp, 3> kOps = {PerturbOp::add_edge, PerturbOp::remove_edge,
                                             PerturbOp::replace_relation};
  Rng rng(seed);
  const auto original = triple_set(g);
  for (int restart = 0; restart < kRestarts; ++restart) {
    ExplanationGraph current = g;
    bool stuck = false;
    for (int step = 0; step < ops && !stuck; ++step) {
      stuck = true;
      for (int attempt = 0; attempt < kAttemptsPerOp; ++attempt) {
        auto next = apply_op(current, kOps[rng.below(kOps.size())], vocab, rng);
        if (next && structurally_valid(*next, vocab, texts)) {
          current = std::move(*next);
          stuck = false;
          break;
        }
      }
    }
    if (!stuck && triple_set(current) != original) return current;
  }
  throw PerturbationError("no valid perturbation found within the retry budget");
}

}  // namespace egraph
