#include "circderiv/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace circderiv {

FlowNetwork::FlowNetwork(std::size_t nodes) : adjacency_(nodes), level_(nodes), cursor_(nodes) {}

void FlowNetwork::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  adjacency_[from].push_back({to, adjacency_[to].size(), capacity});
  adjacency_[to].push_back({from, adjacency_[from].size() - 1, 0});
}

bool FlowNetwork::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    for (const auto& e : adjacency_[v]) {
      if (e.capacity > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        frontier.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t FlowNetwork::push(std::size_t node, std::size_t sink, std::int64_t limit) {
  if (node == sink) return limit;
  for (auto& i = cursor_[node]; i < adjacency_[node].size(); ++i) {
    Edge& e = adjacency_[node][i];
    if (e.capacity <= 0 || level_[e.to] != level_[node] + 1) continue;
    const std::int64_t pushed = push(e.to, sink, std::min(limit, e.capacity));
    if (pushed > 0) {
      e.capacity -= pushed;
      adjacency_[e.to][e.reverse].capacity += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::max_flow(std::size_t source, std::size_t sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (const std::int64_t pushed = push(source, sink, std::numeric_limits<std::int64_t>::max()))
      total += pushed;
  }
  return total;
}

}  // namespace circderiv
