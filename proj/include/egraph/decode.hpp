#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egraph/graph.hpp"
#include "egraph/origins.hpp"
#include "egraph/relation.hpp"

namespace egraph {

inline constexpr std::size_t kMinTensorNodes = 2;
inline constexpr std::size_t kMaxTensorNodes = 8;
inline constexpr double kTensorSumTolerance = 1e-6;

struct TensorNode {
  std::string label;
  NodeOrigin origin = NodeOrigin::external;
};

// Per ordered pair (m, n), m != n, a distribution over the relations
// followed by the no-edge entry. Pairs are stored in row-major order,
// skipping the diagonal.
struct EdgeProbTensor {
  std::vector<TensorNode> nodes;
  std::vector<std::string> relations;
  std::vector<std::vector<double>> probs;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t pair_count() const { return nodes.size() * (nodes.size() - 1); }
  std::size_t pair_index(std::size_t m, std::size_t n) const { return m * (nodes.size() - 1) + (n < m ? n : n - 1); }
  std::pair<std::size_t, std::size_t> pair_at(std::size_t index) const;
  const std::vector<double>& at(std::size_t m, std::size_t n) const { return probs[pair_index(m, n)]; }
  double no_edge(std::size_t m, std::size_t n) const { return at(m, n).back(); }
};

// Throws DecodeError(invalid_tensor) unless: 2..8 nodes with valid, distinct
// concept labels of at most three words; relations distinct and in `vocab`;
// one vector of |relations| + 1 entries per ordered pair, entries in [0, 1]
// summing to 1 within 1e-6.
void check_tensor(const EdgeProbTensor& t, const RelationVocabulary& vocab);

// JSON: {"nodes": [{"label": ..., "origin": "belief"|"argument"|"both"|"external"}],
//        "relations": [...], "probs": [[...], ...]}
// Throws FormatError on malformed JSON or missing fields.
EdgeProbTensor parse_tensor(std::string_view json_text);
EdgeProbTensor load_tensor(const std::string& path);
std::string tensor_to_json(const EdgeProbTensor& t);

struct DecodedGraph {
  ExplanationGraph graph;
  double objective = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> selected;  // sorted tensor pairs
  std::vector<NodeOrigin> origins;                            // aligned with graph.nodes()
};

// Objective of a selection: sum over all ordered pairs of the best relation
// probability if selected, the no-edge probability otherwise.
double selection_objective(const EdgeProbTensor& t, std::span<const std::pair<std::size_t, std::size_t>> selected);

// Index of the most probable relation for pair (m, n), lowest index on ties.
std::size_t best_relation(const EdgeProbTensor& t, std::size_t m, std::size_t n);

// Exact maximizer of selection_objective over selections that connect all
// nodes, contain no directed cycle and have 3..8 edges. Each selected pair
// takes best_relation. Among optimal selections the one whose sorted pair
// list is lexicographically smallest wins (a proper prefix is smaller).
// Throws DecodeError(invalid_tensor) or DecodeError(infeasible), the latter
// when fewer than two nodes can match the belief or the argument.
DecodedGraph decode(const EdgeProbTensor& t, const RelationVocabulary& vocab);

struct DecodeOutcome {
  std::optional<DecodedGraph> result;
  std::string error;
};

// Decodes independent tensors, one per iteration of an OpenMP loop.
// threads <= 0 uses the OpenMP default. Errors are reported per tensor.
std::vector<DecodeOutcome> decode_batch(std::span<const EdgeProbTensor> tensors, const RelationVocabulary& vocab,
                                        int threads = 0);
std::vector<DecodeOutcome> decode_batch_serial(std::span<const EdgeProbTensor> tensors,
                                               const RelationVocabulary& vocab);

}  // namespace egraph
