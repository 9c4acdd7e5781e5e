#include "egraph/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "egraph/error.hpp"

namespace egraph {

FlowResult check_connectivity_flow(std::span<const std::pair<int, int>> selected, int node_count) {
  if (node_count < 1) throw Error("flow network needs at least one node");
  const int source = node_count, sink = node_count + 1, size = node_count + 2;
  std::vector<int> cap(static_cast<std::size_t>(size * size), 0);
  auto at = [&](int u, int v) -> int& { return cap[static_cast<std::size_t>(u * size + v)]; };
  at(source, 0) = node_count;
  for (int v = 0; v < node_count; ++v) at(v, sink) = 1;
  for (auto [m, n] : selected) {
    if (m < 0 || n < 0 || m >= node_count || n >= node_count || m == n) throw Error("selection names an invalid pair");
    at(m, n) = node_count;
    at(n, m) = node_count;
  }
  const std::vector<int> original = cap;

  // Edmonds-Karp.
  int total = 0;
  std::vector<int> parent(static_cast<std::size_t>(size));
  for (;;) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[static_cast<std::size_t>(source)] = source;
    std::queue<int> queue;
    queue.push(source);
    while (!queue.empty() && parent[static_cast<std::size_t>(sink)] < 0) {
      const int u = queue.front();
      queue.pop();
      for (int v = 0; v < size; ++v) {
        if (parent[static_cast<std::size_t>(v)] < 0 && at(u, v) > 0) {
          parent[static_cast<std::size_t>(v)] = u;
          queue.push(v);
        }
      }
    }
    if (parent[static_cast<std::size_t>(sink)] < 0) break;
    int bottleneck = std::numeric_limits<int>::max();
    for (int v = sink; v != source; v = parent[static_cast<std::size_t>(v)]) {
      bottleneck = std::min(bottleneck, at(parent[static_cast<std::size_t>(v)], v));
    }
    for (int v = sink; v != source; v = parent[static_cast<std::size_t>(v)]) {
      const int u = parent[static_cast<std::size_t>(v)];
      at(u, v) -= bottleneck;
      at(v, u) += bottleneck;
    }
    total += bottleneck;
  }

  FlowResult result;
  result.flow = total;
  result.connected = total == node_count;
  auto label = [&](int v) { return v == source ? kFlowSource : (v == sink ? kFlowSink : v); };
  for (int u = 0; u < size; ++u) {
    for (int v = 0; v < size; ++v) {
      const int idx = u * size + v;
      // Capacity minus residual is the net flow, antisymmetric per pair.
      const int net = original[static_cast<std::size_t>(idx)] - cap[static_cast<std::size_t>(idx)];
      if (net > 0) result.arcs.push_back({label(u), label(v), net});
    }
  }
  return result;
}

}  // namespace egraph
