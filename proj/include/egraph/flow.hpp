#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace egraph {

struct ArcFlow {
  int from;  // node index, or kFlowSource / kFlowSink
  int to;
  int amount;
};

inline constexpr int kFlowSource = -1;
inline constexpr int kFlowSink = -2;

struct FlowResult {
  bool connected = false;
  int flow = 0;
  std::vector<ArcFlow> arcs;  // arcs carrying positive flow
};

// Max-flow connectivity test. Source feeds node_count units into node 0,
// every node drains one unit to the sink, and a selected ordered pair lets
// flow pass between its endpoints in either direction with capacity
// node_count. The selection is weakly connected iff the flow is node_count.
FlowResult check_connectivity_flow(std::span<const std::pair<int, int>> selected, int node_count);

}  // namespace egraph
