#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace egraph {

// A node label. The stored label keeps the original casing (trimmed); two
// concepts are equal when their normalized keys are equal.
class Concept {
 public:
  explicit Concept(std::string_view label);

  const std::string& label() const { return label_; }
  const std::string& key() const { return key_; }
  std::size_t word_count() const;

  friend bool operator==(const Concept& a, const Concept& b) { return a.key_ == b.key_; }
  friend bool operator<(const Concept& a, const Concept& b) { return a.key_ < b.key_; }

 private:
  std::string label_;
  std::string key_;
};

struct Edge {
  Edge(std::string_view head_label, std::string_view relation_name, std::string_view tail_label);

  Concept head;
  std::string relation;  // whitespace-collapsed, case kept
  Concept tail;

  std::string relation_key() const;
  // Normalized (head, relation, tail) identity used for duplicate detection.
  std::string triple_key() const;
};

// Exact comparison of stored labels (used by the round-trip property).
bool same_text(const Edge& a, const Edge& b);

// Ordered list of labeled directed edges. Nodes are the concepts mentioned by
// the edges, in order of first appearance.
class ExplanationGraph {
 public:
  // Throws GraphError on an empty edge list, a self-loop or a duplicate triple.
  explicit ExplanationGraph(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Concept>& nodes() const { return nodes_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t node_count() const { return nodes_.size(); }

  // (head index, tail index) into nodes() for every edge, in edge order.
  const std::vector<std::pair<std::size_t, std::size_t>>& endpoints() const { return endpoints_; }

  // Index into nodes(), or npos.
  std::size_t find_node(const Concept& c) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const ExplanationGraph& a, const ExplanationGraph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<Concept> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
};

// Grammar: graph := edge+ ; edge := '(' head ';' relation ';' tail ')'.
// Whitespace is allowed between edges and around the delimiters.
ExplanationGraph parse_graph(std::string_view text);

std::string serialize_edge(const Edge& e);
std::string serialize_edges(std::span<const Edge> edges);
std::string serialize_graph(const ExplanationGraph& g);

}  // namespace egraph
