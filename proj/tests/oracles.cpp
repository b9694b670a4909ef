#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

using motifsig::Digraph;
using motifsig::Edge;
using motifsig::NodeIndex;

using Key = std::pair<int, std::array<std::pair<int, int>, 3>>;

Key key_of(bool adj[3][3]) {
  Key key{0, {}};
  for (int i = 0; i < 3; ++i) {
    int out = 0, in = 0;
    for (int j = 0; j < 3; ++j) {
      out += adj[i][j];
      in += adj[j][i];
    }
    key.first += out;
    key.second[static_cast<std::size_t>(i)] = {out, in};
  }
  std::sort(key.second.begin(), key.second.end());
  return key;
}

// Representatives on nodes A=0, B=1, C=2, written from the usual
// triad pictures (M-A-N naming, D = down, U = up, C = cyclic, T = transitive).
const std::map<Key, std::size_t>& class_table() {
  static const auto table = [] {
    const std::vector<std::pair<std::size_t, std::vector<std::pair<int, int>>>> drawn = {
        {motifsig::k003, {}},
        {motifsig::k012, {{0, 1}}},
        {motifsig::k102, {{0, 1}, {1, 0}}},
        {motifsig::k021D, {{1, 0}, {1, 2}}},
        {motifsig::k021U, {{0, 1}, {2, 1}}},
        {motifsig::k021C, {{0, 1}, {1, 2}}},
        {motifsig::k111D, {{0, 1}, {1, 0}, {2, 1}}},
        {motifsig::k111U, {{0, 1}, {1, 0}, {1, 2}}},
        {motifsig::k030T, {{0, 1}, {2, 1}, {0, 2}}},
        {motifsig::k030C, {{0, 1}, {1, 2}, {2, 0}}},
        {motifsig::k201, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}},
        {motifsig::k120D, {{1, 0}, {1, 2}, {0, 2}, {2, 0}}},
        {motifsig::k120U, {{0, 1}, {2, 1}, {0, 2}, {2, 0}}},
        {motifsig::k120C, {{0, 1}, {1, 2}, {0, 2}, {2, 0}}},
        {motifsig::k210, {{0, 1}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}},
        {motifsig::k300, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}},
    };
    std::map<Key, std::size_t> t;
    for (const auto& [cls, edges] : drawn) {
      bool adj[3][3] = {};
      for (auto [a, b] : edges) adj[a][b] = true;
      if (!t.emplace(key_of(adj), cls).second) throw std::logic_error("degree key collision");
    }
    return t;
  }();
  return table;
}

}  // namespace

std::size_t classify_triad(const Digraph& g, NodeIndex a, NodeIndex b, NodeIndex c) {
  const NodeIndex v[3] = {a, b, c};
  bool adj[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) adj[i][j] = g.has_edge(v[i], v[j]);
  return class_table().at(key_of(adj));
}

std::array<std::uint64_t, motifsig::kMotifCount> census(const Digraph& g) {
  std::array<std::uint64_t, motifsig::kMotifCount> counts{};
  const auto n = static_cast<NodeIndex>(g.node_count());
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      for (NodeIndex c = b + 1; c < n; ++c) ++counts[classify_triad(g, a, b, c)];
  return counts;
}

double similarity(const std::array<double, motifsig::kMotifCount>& a,
                  const std::array<double, motifsig::kMotifCount>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  long double c = dot / (std::sqrt(na) * std::sqrt(nb));
  c = std::clamp(c, -1.0L, 1.0L);
  return static_cast<double>(1.0L - std::acos(c) / std::numbers::pi_v<long double>);
}

Digraph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = 0; v < n; ++v)
      if (u != v && coin(rng)) edges.emplace_back(u, v);
  return Digraph::from_edges(n, std::move(edges));
}

TempDir::TempDir() {
  static std::mt19937_64 rng{std::random_device{}()};
  for (;;) {
    path_ = std::filesystem::temp_directory_path() / ("motifsig-" + std::to_string(rng()));
    if (std::filesystem::create_directory(path_)) return;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oracle
