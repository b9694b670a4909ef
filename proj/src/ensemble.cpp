#include <cmath>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "motifsig/errors.hpp"
#include "motifsig/motif.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace motifsig {

namespace {

// Ordered pair index in [0, n(n-1)) -> (from, to) with from != to.
Edge pair_from_index(std::uint64_t index, std::uint64_t n) {
  const auto from = index / (n - 1);
  auto to = index % (n - 1);
  if (to >= from) ++to;
  return {static_cast<NodeIndex>(from), static_cast<NodeIndex>(to)};
}

// `count` distinct values from [0, total), by rejection.
std::vector<std::uint64_t> sample_distinct(std::uint64_t total, std::uint64_t count,
                                           std::mt19937_64& rng) {
  if (count == 0) return {};
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  std::vector<std::uint64_t> result;
  result.reserve(count);
  while (result.size() < count) {
    const auto x = pick(rng);
    if (seen.insert(x).second) result.push_back(x);
  }
  return result;
}

}  // namespace

Digraph random_digraph(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t slots = n < 2 ? 0 : n * (n - 1);
  if (m > slots)
    throw ParameterError("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) +
                         " nodes (max " + std::to_string(slots) + ")");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  if (m <= slots / 2) {
    for (auto idx : sample_distinct(slots, m, rng)) edges.push_back(pair_from_index(idx, n));
  } else {
    // Dense case: choose the pairs to leave out instead.
    auto excluded = sample_distinct(slots, slots - m, rng);
    std::unordered_set<std::uint64_t> skip(excluded.begin(), excluded.end());
    for (std::uint64_t idx = 0; idx < slots; ++idx)
      if (!skip.contains(idx)) edges.push_back(pair_from_index(idx, n));
  }
  return Digraph::from_edges(n, std::move(edges));
}

EnsembleStats random_ensemble(std::uint64_t n, std::uint64_t m, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads) {
  if (samples < 2) throw ParameterError("ensemble needs at least 2 samples");
  const std::uint64_t slots = n < 2 ? 0 : n * (n - 1);
  if (m > slots)
    throw ParameterError("edge count " + std::to_string(m) + " exceeds n(n-1) = " +
                         std::to_string(slots));

  std::vector<MotifCounts> censuses(samples);
  detail::parallel_for(samples, threads, [&](std::size_t i) {
    censuses[i] = triad_census(random_digraph(n, m, detail::derive_seed(seed, i)));
  });

  EnsembleStats stats;
  stats.node_count = n;
  stats.edge_count = m;
  stats.samples = samples;
  stats.seed = seed;
  // Two-pass population statistics, reduced in sample order.
  for (std::size_t k = 0; k < kMotifCount; ++k) {
    long double sum = 0;
    for (const auto& c : censuses) sum += static_cast<long double>(c.counts[k]);
    const long double mean = sum / samples;
    long double sq = 0;
    for (const auto& c : censuses) {
      const long double d = static_cast<long double>(c.counts[k]) - mean;
      sq += d * d;
    }
    stats.mean[k] = static_cast<double>(mean);
    stats.sd[k] = static_cast<double>(std::sqrt(sq / samples));
  }
  return stats;
}

ZSignature z_signature(const MotifCounts& observed, const EnsembleStats& ensemble) {
  if (observed.node_count != ensemble.node_count || observed.edge_count != ensemble.edge_count)
    throw ContractError("census of graph (n=" + std::to_string(observed.node_count) +
                        ", m=" + std::to_string(observed.edge_count) +
                        ") does not match ensemble (n=" + std::to_string(ensemble.node_count) +
                        ", m=" + std::to_string(ensemble.edge_count) + ")");
  ZSignature sig;
  sig.node_count = ensemble.node_count;
  sig.edge_count = ensemble.edge_count;
  sig.samples = ensemble.samples;
  sig.seed = ensemble.seed;
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    const double diff = static_cast<double>(observed.counts[i]) - ensemble.mean[i];
    if (ensemble.sd[i] < 1e-12)
      sig.z[i] = std::abs(diff) < 1e-9 ? 0.0 : diff;
    else
      sig.z[i] = diff / ensemble.sd[i];
  }
  return sig;
}

ZSignature sign_graph(const CommGraph& g, std::uint64_t samples, std::uint64_t seed,
                      unsigned threads) {
  const auto counts = triad_census(g);
  return z_signature(counts, random_ensemble(counts.node_count, counts.edge_count, samples, seed,
                                             threads));
}

}  // namespace motifsig
