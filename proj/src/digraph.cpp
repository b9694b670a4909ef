#include "motifsig/digraph.hpp"

#include <algorithm>
#include <string>

#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

// Counting-sort style CSR build. `pairs` must already be sorted by (first, second).
void fill_adjacency(std::size_t node_count, const std::vector<Edge>& pairs,
                    std::vector<std::size_t>& offsets, std::vector<NodeIndex>& targets) {
  offsets.assign(node_count + 1, 0);
  for (const auto& [from, to] : pairs) ++offsets[from + 1];
  for (std::size_t v = 0; v < node_count; ++v) offsets[v + 1] += offsets[v];
  targets.resize(pairs.size());
  std::size_t i = 0;
  for (const auto& e : pairs) targets[i++] = e.second;
}

}  // namespace

Digraph Digraph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  for (const auto& [from, to] : edges) {
    if (from >= node_count || to >= node_count)
      throw ParameterError("edge endpoint out of range for " + std::to_string(node_count) +
                           " nodes");
  }
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Digraph g;
  g.node_count_ = node_count;
  fill_adjacency(node_count, edges, g.out_.offsets, g.out_.targets);

  std::vector<Edge> reversed;
  reversed.reserve(edges.size());
  for (const auto& [from, to] : edges) reversed.emplace_back(to, from);
  std::sort(reversed.begin(), reversed.end());
  fill_adjacency(node_count, reversed, g.in_.offsets, g.in_.targets);

  // Undirected neighbourhood: merge of both orientations.
  std::vector<Edge> both = std::move(edges);
  both.insert(both.end(), reversed.begin(), reversed.end());
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  fill_adjacency(node_count, both, g.both_.offsets, g.both_.targets);
  return g;
}

bool Digraph::has_edge(NodeIndex from, NodeIndex to) const {
  auto row = out_neighbors(from);
  return std::binary_search(row.begin(), row.end(), to);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (NodeIndex v = 0; v < node_count_; ++v)
    for (NodeIndex w : out_neighbors(v)) result.emplace_back(v, w);
  return result;
}

}  // namespace motifsig
