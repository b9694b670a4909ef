#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace motifsig {

using NodeIndex = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

/// Immutable simple directed graph in compressed adjacency form.
/// Out-, in- and undirected neighbour lists are sorted and duplicate free.
class Digraph {
 public:
  Digraph() = default;

  /// Self-loops and repeated edges in `edges` are dropped.
  /// Throws ParameterError if an endpoint is >= node_count.
  static Digraph from_edges(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return out_.targets.size(); }

  std::span<const NodeIndex> out_neighbors(NodeIndex v) const { return out_.row(v); }
  std::span<const NodeIndex> in_neighbors(NodeIndex v) const { return in_.row(v); }
  /// Nodes adjacent to v in either direction.
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return both_.row(v); }

  bool has_edge(NodeIndex from, NodeIndex to) const;

  /// Edges in (from, to) lexicographic order.
  std::vector<Edge> edges() const;

 private:
  struct Adjacency {
    std::vector<std::size_t> offsets{0};
    std::vector<NodeIndex> targets;

    std::span<const NodeIndex> row(NodeIndex v) const {
      return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
    }
  };

  std::size_t node_count_ = 0;
  Adjacency out_;
  Adjacency in_;
  Adjacency both_;
};

}  // namespace motifsig
