#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "egraph/graph.hpp"

namespace egraph {

enum class NodeOrigin { belief, argument, both, external };

std::string_view to_string(NodeOrigin origin);
std::optional<NodeOrigin> parse_origin(std::string_view s);

inline bool counts_for_belief(NodeOrigin o) { return o == NodeOrigin::belief || o == NodeOrigin::both; }
inline bool counts_for_argument(NodeOrigin o) {
  return o == NodeOrigin::argument || o == NodeOrigin::both;
}

// A concept is internal to a text when its tokens occur there as a contiguous
// token run. Both sides are lowercased and stripped of punctuation first.
bool occurs_in(std::string_view label, std::string_view text);

NodeOrigin classify_concept(std::string_view label, std::string_view belief, std::string_view argument);

// One origin per node, aligned with g.nodes().
std::vector<NodeOrigin> classify_origins(const ExplanationGraph& g, std::string_view belief,
                                         std::string_view argument);

}  // namespace egraph
