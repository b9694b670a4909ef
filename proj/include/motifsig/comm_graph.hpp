#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motifsig/alert.hpp"
#include "motifsig/digraph.hpp"

namespace motifsig {

enum class NodeKind { host, host_port };

/// Vertex of a communication structure graph: a host, or a port bound to a host.
struct NodeId {
  std::string ip;
  std::optional<std::uint16_t> port;

  NodeKind kind() const noexcept { return port ? NodeKind::host_port : NodeKind::host; }
  /// "IP" for hosts, "IP:port" for ports.
  std::string str() const;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t host_count = 0;
  std::size_t port_node_count = 0;
};

/// Directed graph of who attacked whom over which ports. Each alert
/// (S:T -> D:L) contributes the chain S -> S:T -> D:L -> D; nodes and edges
/// have set semantics so repeated alerts change nothing.
class CommGraph {
 public:
  /// Throws ParameterError on an empty cluster.
  static CommGraph build(const AlertCluster& cluster);

  const Digraph& digraph() const noexcept { return graph_; }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  GraphStats stats() const;

  /// Alerts with S == D and T == L would have produced the self-loop
  /// S:T -> S:T; that edge is dropped and counted here.
  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }

  /// Edges as (source id, target id) strings, sorted. Independent of the
  /// order in which alerts were added.
  std::vector<std::pair<std::string, std::string>> labeled_edges() const;

  /// Debug export, one "src<TAB>dst" line per edge in labeled_edges() order.
  void write_edge_list(std::ostream& out) const;

 private:
  std::vector<NodeId> nodes_;
  Digraph graph_;
  std::size_t dropped_self_loops_ = 0;
};

inline CommGraph build_graph(const AlertCluster& cluster) { return CommGraph::build(cluster); }
inline GraphStats graph_stats(const CommGraph& g) { return g.stats(); }

}  // namespace motifsig
