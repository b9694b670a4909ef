#include "motifsig/comm_graph.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "motifsig/errors.hpp"

namespace motifsig {

std::string NodeId::str() const {
  return port ? ip + ":" + std::to_string(*port) : ip;
}

CommGraph CommGraph::build(const AlertCluster& cluster) {
  if (cluster.alerts.empty())
    throw ParameterError("cluster '" + cluster.cluster_id + "' has no alerts");

  CommGraph g;
  std::map<NodeId, NodeIndex> index;
  const auto intern = [&](NodeId id) {
    auto [it, inserted] = index.try_emplace(std::move(id), static_cast<NodeIndex>(g.nodes_.size()));
    if (inserted) g.nodes_.push_back(it->first);
    return it->second;
  };

  std::vector<Edge> edges;
  edges.reserve(3 * cluster.alerts.size());
  for (const auto& alert : cluster.alerts) {
    const NodeIndex src_host = intern({alert.src_ip, std::nullopt});
    const NodeIndex src_port = intern({alert.src_ip, alert.src_port});
    const NodeIndex dst_port = intern({alert.dst_ip, alert.dst_port});
    const NodeIndex dst_host = intern({alert.dst_ip, std::nullopt});
    edges.emplace_back(src_host, src_port);
    if (src_port == dst_port)
      ++g.dropped_self_loops_;
    else
      edges.emplace_back(src_port, dst_port);
    edges.emplace_back(dst_port, dst_host);
  }
  g.graph_ = Digraph::from_edges(g.nodes_.size(), std::move(edges));
  return g;
}

GraphStats CommGraph::stats() const {
  GraphStats s;
  s.node_count = graph_.node_count();
  s.edge_count = graph_.edge_count();
  s.host_count = static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const NodeId& n) { return !n.port; }));
  s.port_node_count = s.node_count - s.host_count;
  return s;
}

std::vector<std::pair<std::string, std::string>> CommGraph::labeled_edges() const {
  std::vector<std::pair<std::string, std::string>> result;
  result.reserve(graph_.edge_count());
  for (const auto& [from, to] : graph_.edges()) result.emplace_back(nodes_[from].str(), nodes_[to].str());
  std::sort(result.begin(), result.end());
  return result;
}

void CommGraph::write_edge_list(std::ostream& out) const {
  for (const auto& [from, to] : labeled_edges()) out << from << '\t' << to << '\n';
}

}  // namespace motifsig
