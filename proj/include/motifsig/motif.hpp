#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "motifsig/comm_graph.hpp"
#include "motifsig/digraph.hpp"

namespace motifsig {

/// Number of isomorphism classes of 3-node directed graphs.
inline constexpr std::size_t kMotifCount = 16;

/// Class names in index order. Index 0 is the empty triad, index 15 the
/// complete one; the order in between is the conventional triad-census order.
inline constexpr std::array<std::string_view, kMotifCount> kMotifNames = {
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300"};

/// Tag stored with every signature; identifies the index order above.
inline constexpr std::string_view kMotifOrder = "triad-census-v1";

enum Motif : std::size_t {
  k003, k012, k102, k021D, k021U, k021C, k111D, k111U,
  k030T, k030C, k201, k120D, k120U, k120C, k210, k300
};

/// Raw triad census. Counts cover every node triple, so they sum to C(n, 3).
struct MotifCounts {
  std::array<std::uint64_t, kMotifCount> counts{};
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;

  friend bool operator==(const MotifCounts&, const MotifCounts&) = default;
};

/// n choose 3.
std::uint64_t triple_count(std::uint64_t n) noexcept;

/// Encodes the induced subgraph on (v, u, w) as a 6-bit code:
/// v->u 1, u->v 2, v->w 4, w->v 8, u->w 16, w->u 32.
int triad_code(const Digraph& g, NodeIndex v, NodeIndex u, NodeIndex w);

/// Motif index for a triad code.
std::size_t motif_of_code(int code);

/// Exact census in O(m * max degree), after Batagelj and Mrvar: connected
/// triads are visited once from their lowest dyad, disconnected ones are
/// counted arithmetically.
MotifCounts triad_census(const Digraph& g);
MotifCounts triad_census(const CommGraph& g);

/// Reference census that enumerates every triple and canonicalizes it over
/// all 6 vertex permutations. Refuses graphs with more than 40 nodes.
MotifCounts census_bruteforce(const Digraph& g);

/// Per-class mean and population standard deviation of the census over an
/// ensemble of uniform random digraphs with fixed node and edge counts.
struct EnsembleStats {
  std::array<double, kMotifCount> mean{};
  std::array<double, kMotifCount> sd{};
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultEnsembleSamples = 100;

/// Uniform random simple digraph with exactly `m` distinct non-loop edges.
Digraph random_digraph(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

/// Draws `samples` digraphs from G(n, m), each seeded from (seed, sample index),
/// and summarizes their censuses. Results do not depend on `threads`
/// (0 = hardware concurrency). Throws ParameterError if m > n(n-1) or samples < 2.
EnsembleStats random_ensemble(std::uint64_t n, std::uint64_t m, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads = 0);

/// Size-independent signature: per-class over/under-representation relative
/// to the random ensemble.
struct ZSignature {
  std::array<double, kMotifCount> z{};
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string motif_order{kMotifOrder};

  friend bool operator==(const ZSignature&, const ZSignature&) = default;
};

/// z[i] = (count[i] - mean[i]) / sd[i]. A class with (numerically) zero
/// spread gets z = 0 if the observation equals the mean and the raw
/// difference otherwise. Throws ContractError when node or edge counts differ.
ZSignature z_signature(const MotifCounts& observed, const EnsembleStats& ensemble);

/// build census + ensemble + z-score for one graph.
ZSignature sign_graph(const CommGraph& g, std::uint64_t samples, std::uint64_t seed,
                      unsigned threads = 0);

}  // namespace motifsig
