#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egraph/decode.hpp"
#include "egraph/relation.hpp"
#include "egraph/rng.hpp"

namespace egraph::testing {

inline double unit(Rng& rng) { return static_cast<double>(rng.next() >> 11) / static_cast<double>(1ULL << 53); }

// Origins that make any tensor with 3+ nodes satisfy the internal-concept
// minimums: two belief nodes, two argument nodes (sharing one for 3 nodes),
// the rest external.
inline std::vector<TensorNode> tensor_nodes(std::size_t n) {
  std::vector<TensorNode> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"node" + std::to_string(i), NodeOrigin::external});
  if (n == 2) {
    nodes[0].origin = nodes[1].origin = NodeOrigin::both;
  } else if (n == 3) {
    nodes[0].origin = NodeOrigin::belief;
    nodes[1].origin = NodeOrigin::both;
    nodes[2].origin = NodeOrigin::argument;
  } else {
    nodes[0].origin = nodes[1].origin = NodeOrigin::belief;
    nodes[2].origin = nodes[3].origin = NodeOrigin::argument;
  }
  return nodes;
}

// Random tensor. Each vector is a normalized draw of exponentials raised to
// `sharpness`; with probability `sparsity` the no-edge entry is boosted so
// that most pairs prefer no edge, as real edge predictors do.
inline EdgeProbTensor random_tensor(Rng& rng, std::size_t n, const RelationVocabulary& vocab, std::size_t relations,
                                    double sharpness = 1.0, double sparsity = 0.6) {
  EdgeProbTensor t;
  t.nodes = tensor_nodes(n);
  for (std::size_t r = 0; r < relations; ++r) t.relations.push_back(vocab.at(r).name);
  for (std::size_t i = 0; i < n * (n - 1); ++i) {
    std::vector<double> v(relations + 1);
    double sum = 0.0;
    for (double& x : v) {
      x = std::pow(-std::log(1.0 - unit(rng)), sharpness);
      sum += x;
    }
    if (unit(rng) < sparsity) {
      v.back() += 2.0 * sum;
      sum *= 3.0;
    }
    for (double& x : v) x /= sum;
    t.probs.push_back(std::move(v));
  }
  return t;
}

inline EdgeProbTensor uniform_tensor(std::size_t n, const RelationVocabulary& vocab, std::size_t relations) {
  EdgeProbTensor t;
  t.nodes = tensor_nodes(n);
  for (std::size_t r = 0; r < relations; ++r) t.relations.push_back(vocab.at(r).name);
  t.probs.assign(n * (n - 1), std::vector<double>(relations + 1, 1.0 / static_cast<double>(relations + 1)));
  return t;
}

// (best relation probability, no-edge probability) per ordered pair, for
// the exhaustive oracle.
inline std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> oracle_scores(const EdgeProbTensor& t) {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> out;
  const std::size_t n = t.nodes.size();
  std::size_t i = 0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      if (m == k) continue;
      const auto& v = t.probs[i++];
      double best = v[0];
      for (std::size_t r = 1; r + 1 < v.size(); ++r) best = std::max(best, v[r]);
      out[{m, k}] = {best, v.back()};
    }
  }
  return out;
}

}  // namespace egraph::testing
