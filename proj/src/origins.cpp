#include "egraph/origins.hpp"

#include <algorithm>
#include <string>

#include "egraph/text.hpp"

namespace egraph {

std::string_view to_string(NodeOrigin origin) {
  switch (origin) {
    case NodeOrigin::belief: return "belief";
    case NodeOrigin::argument: return "argument";
    case NodeOrigin::both: return "both";
    case NodeOrigin::external: return "external";
  }
  return "external";
}

std::optional<NodeOrigin> parse_origin(std::string_view s) {
  for (auto o : {NodeOrigin::belief, NodeOrigin::argument, NodeOrigin::both, NodeOrigin::external}) {
    if (s == to_string(o)) return o;
  }
  return std::nullopt;
}

namespace {

bool contains_run(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

NodeOrigin origin_from(bool in_belief, bool in_argument) {
  if (in_belief && in_argument) return NodeOrigin::both;
  if (in_belief) return NodeOrigin::belief;
  if (in_argument) return NodeOrigin::argument;
  return NodeOrigin::external;
}

}  // namespace

bool occurs_in(std::string_view label, std::string_view text) {
  return contains_run(text::match_tokens(text), text::match_tokens(label));
}

NodeOrigin classify_concept(std::string_view label, std::string_view belief, std::string_view argument) {
  return origin_from(occurs_in(label, belief), occurs_in(label, argument));
}

std::vector<NodeOrigin> classify_origins(const ExplanationGraph& g, std::string_view belief,
                                         std::string_view argument) {
  const auto belief_tokens = text::match_tokens(belief);
  const auto argument_tokens = text::match_tokens(argument);
  std::vector<NodeOrigin> origins;
  origins.reserve(g.node_count());
  for (const Concept& node : g.nodes()) {
    const auto tokens = text::match_tokens(node.label());
    origins.push_back(origin_from(contains_run(belief_tokens, tokens),
                                  contains_run(argument_tokens, tokens)));
  }
  return origins;
}

}  // namespace egraph
