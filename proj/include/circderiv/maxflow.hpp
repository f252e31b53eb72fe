#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace circderiv {

/// Dinic's blocking-flow max-flow on integer capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes);

  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::int64_t max_flow(std::size_t source, std::size_t sink);

  std::size_t node_count() const { return adjacency_.size(); }

 private:
  struct Edge {
    std::size_t to;
    std::size_t reverse;
    std::int64_t capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  std::int64_t push(std::size_t node, std::size_t sink, std::int64_t limit);

  std::vector<std::vector<Edge>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace circderiv
