#include "motifsig/motif.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

// Motif index for every 6-bit triad code (bit layout documented at triad_code).
constexpr std::array<std::uint8_t, 64> kCodeToMotif = {
    0, 1, 1, 2, 1, 3, 5, 7,   1, 5, 4, 6,  2, 7,  6,  10,
    1, 5, 3, 7, 4, 8, 8, 12,  5, 9, 8, 13, 6, 13, 11, 14,
    1, 4, 5, 6, 5, 8, 9, 13,  3, 8, 8, 11, 7, 12, 13, 14,
    2, 6, 7, 10, 6, 11, 13, 14, 7, 13, 12, 14, 10, 14, 14, 15};

}  // namespace

std::uint64_t triple_count(std::uint64_t n) noexcept {
  if (n < 3) return 0;
  return n * (n - 1) / 2 * (n - 2) / 3;
}

int triad_code(const Digraph& g, NodeIndex v, NodeIndex u, NodeIndex w) {
  int code = 0;
  if (g.has_edge(v, u)) code |= 1;
  if (g.has_edge(u, v)) code |= 2;
  if (g.has_edge(v, w)) code |= 4;
  if (g.has_edge(w, v)) code |= 8;
  if (g.has_edge(u, w)) code |= 16;
  if (g.has_edge(w, u)) code |= 32;
  return code;
}

std::size_t motif_of_code(int code) { return kCodeToMotif.at(static_cast<std::size_t>(code)); }

MotifCounts triad_census(const Digraph& g) {
  MotifCounts result;
  const std::uint64_t n = g.node_count();
  result.node_count = n;
  result.edge_count = g.edge_count();
  if (n < 3) return result;

  auto& census = result.counts;
  // Union of N(v) and N(u) minus {v, u}; flag marks membership in N(v).
  std::vector<std::pair<NodeIndex, bool>> shared;

  for (NodeIndex v = 0; v < n; ++v) {
    const auto nv = g.neighbors(v);
    for (NodeIndex u : nv) {
      if (u <= v) continue;
      const auto nu = g.neighbors(u);

      shared.clear();
      auto a = nv.begin(), b = nu.begin();
      while (a != nv.end() || b != nu.end()) {
        NodeIndex w;
        bool in_v;
        if (b == nu.end() || (a != nv.end() && *a < *b)) {
          w = *a++;
          in_v = true;
        } else if (a == nv.end() || *b < *a) {
          w = *b++;
          in_v = false;
        } else {
          w = *a++;
          ++b;
          in_v = true;
        }
        if (w != u && w != v) shared.emplace_back(w, in_v);
      }

      const bool vu = g.has_edge(v, u), uv = g.has_edge(u, v);
      const int dyad = (vu ? 1 : 0) | (uv ? 2 : 0);
      census[dyad == 3 ? k102 : k012] += n - shared.size() - 2;

      for (const auto& [w, w_adj_v] : shared) {
        if (u < w || (v < w && w < u && !w_adj_v)) {
          int code = dyad;
          if (w_adj_v) {
            if (g.has_edge(v, w)) code |= 4;
            if (g.has_edge(w, v)) code |= 8;
          }
          if (g.has_edge(u, w)) code |= 16;
          if (g.has_edge(w, u)) code |= 32;
          ++census[kCodeToMotif[static_cast<std::size_t>(code)]];
        }
      }
    }
  }

  std::uint64_t connected = 0;
  for (std::size_t i = 1; i < kMotifCount; ++i) connected += census[i];
  census[k003] = triple_count(n) - connected;
  return result;
}

MotifCounts triad_census(const CommGraph& g) { return triad_census(g.digraph()); }

namespace {

// Classifies a triad from first principles (dyad types plus edge directions),
// without using the code table above.
std::size_t classify_structurally(int code) {
  bool adj[3][3] = {};
  adj[0][1] = code & 1;
  adj[1][0] = code & 2;
  adj[0][2] = code & 4;
  adj[2][0] = code & 8;
  adj[1][2] = code & 16;
  adj[2][1] = code & 32;

  int mutual = 0, asym = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (adj[i][j] && adj[j][i]) ++mutual;
      else if (adj[i][j] || adj[j][i]) ++asym;
    }
  const auto out_deg = [&](int i) { return int(adj[i][0]) + adj[i][1] + adj[i][2]; };
  const auto in_deg = [&](int i) { return int(adj[0][i]) + adj[1][i] + adj[2][i]; };
  // Node that is not part of the mutual dyad, when exactly one mutual dyad exists.
  const auto outsider = [&]() {
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      if (adj[j][k] && adj[k][j]) return i;
    }
    return -1;
  };

  if (mutual == 0 && asym == 0) return k003;
  if (mutual == 0 && asym == 1) return k012;
  if (mutual == 1 && asym == 0) return k102;
  if (mutual == 0 && asym == 2) {
    for (int i = 0; i < 3; ++i) {
      if (out_deg(i) == 2) return k021D;
      if (in_deg(i) == 2) return k021U;
    }
    return k021C;
  }
  if (mutual == 1 && asym == 1) {
    // The asymmetric edge touches the mutual pair either inbound or outbound.
    const int z = outsider();
    return out_deg(z) == 1 ? k111D : k111U;
  }
  if (mutual == 0 && asym == 3) {
    for (int i = 0; i < 3; ++i)
      if (out_deg(i) == 2) return k030T;
    return k030C;
  }
  if (mutual == 2 && asym == 0) return k201;
  if (mutual == 1 && asym == 2) {
    const int z = outsider();
    if (out_deg(z) == 2) return k120D;
    if (in_deg(z) == 2) return k120U;
    return k120C;
  }
  if (mutual == 2 && asym == 1) return k210;
  return k300;
}

int permute_code(int code, const std::array<int, 3>& perm) {
  bool adj[3][3] = {};
  adj[0][1] = code & 1;
  adj[1][0] = code & 2;
  adj[0][2] = code & 4;
  adj[2][0] = code & 8;
  adj[1][2] = code & 16;
  adj[2][1] = code & 32;
  const auto e = [&](int a, int b) { return adj[perm[a]][perm[b]] ? 1 : 0; };
  return e(0, 1) | e(1, 0) << 1 | e(0, 2) << 2 | e(2, 0) << 3 | e(1, 2) << 4 | e(2, 1) << 5;
}

}  // namespace

MotifCounts census_bruteforce(const Digraph& g) {
  const std::uint64_t n = g.node_count();
  if (n > 40)
    throw ParameterError("census_bruteforce refuses graphs with more than 40 nodes (got " +
                         std::to_string(n) + ")");

  // Canonical form of each code: the smallest code over all vertex orders.
  std::array<std::size_t, 64> class_of{};
  for (int code = 0; code < 64; ++code) {
    std::array<int, 3> perm = {0, 1, 2};
    int canonical = code;
    do {
      canonical = std::min(canonical, permute_code(code, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    class_of[static_cast<std::size_t>(code)] = classify_structurally(canonical);
  }

  MotifCounts result;
  result.node_count = n;
  result.edge_count = g.edge_count();
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      for (NodeIndex c = b + 1; c < n; ++c)
        ++result.counts[class_of[static_cast<std::size_t>(triad_code(g, a, b, c))]];
  return result;
}

}  // namespace motifsig
