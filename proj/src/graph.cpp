#include "egraph/graph.hpp"

#include <unordered_map>
#include <unordered_set>

#include "egraph/error.hpp"
#include "egraph/text.hpp"

namespace egraph {

namespace {

bool has_forbidden_char(std::string_view s) {
  return s.find_first_of(";()") != std::string_view::npos;
}

}  // namespace

Concept::Concept(std::string_view label)
    : label_(text::trim(label)), key_(text::normalize(label)) {
  if (key_.empty()) throw GraphError(GraphError::Kind::invalid_concept, "empty concept label");
  if (has_forbidden_char(label_)) {
    throw GraphError(GraphError::Kind::invalid_concept,
                     "concept '" + label_ + "' contains a forbidden character");
  }
}

std::size_t Concept::word_count() const { return text::split_whitespace(label_).size(); }

Edge::Edge(std::string_view head_label, std::string_view relation_name, std::string_view tail_label)
    : head(head_label), relation(text::collapse_whitespace(relation_name)), tail(tail_label) {
  if (relation.empty()) throw GraphError(GraphError::Kind::invalid_concept, "empty relation");
}

std::string Edge::relation_key() const { return text::to_lower(relation); }

std::string Edge::triple_key() const {
  std::string key = head.key();
  key += ';';
  key += relation_key();
  key += ';';
  key += tail.key();
  return key;
}

bool same_text(const Edge& a, const Edge& b) {
  return a.head.label() == b.head.label() && a.relation == b.relation &&
         a.tail.label() == b.tail.label();
}

ExplanationGraph::ExplanationGraph(std::vector<Edge> edges) : edges_(std::move(edges)) {
  if (edges_.empty()) throw GraphError(GraphError::Kind::empty, "graph has no edges");
  std::unordered_map<std::string, std::size_t> node_index;
  std::unordered_set<std::string> triples;
  auto intern = [&](const Concept& c) {
    auto [it, inserted] = node_index.emplace(c.key(), nodes_.size());
    if (inserted) nodes_.push_back(c);
    return it->second;
  };
  for (const Edge& e : edges_) {
    if (e.head == e.tail) {
      throw GraphError(GraphError::Kind::self_loop, "self-loop on '" + e.head.label() + "'");
    }
    if (!triples.insert(e.triple_key()).second) {
      throw GraphError(GraphError::Kind::duplicate_edge, "duplicate edge " + serialize_edge(e));
    }
    std::size_t h = intern(e.head);
    std::size_t t = intern(e.tail);
    endpoints_.emplace_back(h, t);
  }
}

std::size_t ExplanationGraph::find_node(const Concept& c) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == c) return i;
  }
  return npos;
}

bool operator==(const ExplanationGraph& a, const ExplanationGraph& b) {
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    if (!same_text(a.edges_[i], b.edges_[i])) return false;
  }
  return true;
}

namespace {

class GraphParser {
 public:
  explicit GraphParser(std::string_view text) : text_(text) {}

  ExplanationGraph run() {
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_offsets;
    std::unordered_set<std::string> triples;
    skip_space();
    while (pos_ < text_.size()) {
      const std::size_t start = pos_;
      expect('(');
      std::string_view head = field(';', "head concept");
      std::string_view relation = field(';', "relation");
      std::string_view tail = field(')', "tail concept");
      Edge edge(head, relation, tail);
      if (edge.head == edge.tail) {
        throw ParseError(ParseError::Kind::self_loop, start,
                         "self-loop on concept '" + edge.head.label() + "'");
      }
      if (!triples.insert(edge.triple_key()).second) {
        throw ParseError(ParseError::Kind::duplicate_edge, start,
                         "duplicate edge " + serialize_edge(edge));
      }
      edges.push_back(std::move(edge));
      skip_space();
    }
    if (edges.empty()) throw ParseError(ParseError::Kind::empty_graph, pos_, "empty graph");
    return ExplanationGraph(std::move(edges));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && text::is_space(text_[pos_])) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(ParseError::Kind::syntax, pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  // Reads up to the terminator and consumes it. Delimiters other than the
  // terminator are syntax errors.
  std::string_view field(char terminator, const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != terminator) {
      char c = text_[pos_];
      if (c == ';' || c == '(' || c == ')') {
        throw ParseError(ParseError::Kind::syntax, pos_,
                         std::string("unexpected '") + c + "' in " + what);
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) {
      throw ParseError(ParseError::Kind::syntax, pos_,
                       std::string("unterminated ") + what + ", expected '" + terminator + "'");
    }
    std::string_view value = text::trim(text_.substr(start, pos_ - start));
    if (value.empty()) {
      throw ParseError(ParseError::Kind::syntax, start, std::string("empty ") + what);
    }
    ++pos_;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExplanationGraph parse_graph(std::string_view text) { return GraphParser(text).run(); }

std::string serialize_edge(const Edge& e) {
  return "(" + e.head.label() + "; " + e.relation + "; " + e.tail.label() + ")";
}

std::string serialize_edges(std::span<const Edge> edges) {
  std::string out;
  for (const Edge& e : edges) out += serialize_edge(e);
  return out;
}

std::string serialize_graph(const ExplanationGraph& g) { return serialize_edges(g.edges()); }

}  // namespace egraph
