#include "motifsig/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "motifsig/errors.hpp"
#include "parallel.hpp"

namespace motifsig {

namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw ParameterError("tau must lie in [0, 1], got " + std::to_string(tau));
}

std::vector<ZSignature> bodies(std::span<const AttackSignature> attacks) {
  std::vector<ZSignature> result;
  result.reserve(attacks.size());
  for (const auto& a : attacks) result.push_back(a.signature);
  return result;
}

}  // namespace

std::vector<Assignment> classify(std::span<const AttackSignature> attacks, const ReferenceSet& refs,
                                 double tau) {
  if (refs.empty()) throw ParameterError("reference set is empty");
  check_tau(tau);

  std::vector<Assignment> result;
  result.reserve(attacks.size());
  for (const auto& attack : attacks) {
    std::size_t best = 0;
    double best_sim = -1.0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const double s = similarity(attack.signature, refs.entries()[r].signature).value;
      if (s > best_sim) {
        best_sim = s;
        best = r;
      }
    }
    const bool matched = best_sim >= tau;
    result.push_back({attack.cluster_id,
                      matched ? refs.entries()[best].name : std::string(kUnmatched), best_sim});
  }
  return result;
}

SimilarityMatrix SimilarityMatrix::compute(std::span<const ZSignature> sigs, unsigned threads) {
  SimilarityMatrix m;
  m.n_ = sigs.size();
  m.upper_.resize(m.n_ < 2 ? 0 : m.n_ * (m.n_ - 1) / 2);
  detail::parallel_for(m.n_, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m.n_; ++j)
      m.upper_[m.offset(i, j)] = similarity(sigs[i], sigs[j]).value;
  });
  return m;
}

SimilarityMatrix SimilarityMatrix::compute(std::span<const AttackSignature> sigs, unsigned threads) {
  const auto b = bodies(sigs);
  return compute(std::span<const ZSignature>(b), threads);
}

double SimilarityMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  if (i > j) std::swap(i, j);
  return upper_[offset(i, j)];
}

Dendrogram complete_linkage(const SimilarityMatrix& sims) {
  const std::size_t n = sims.size();
  Dendrogram d;
  d.leaf_count = n;
  if (n < 2) return d;

  // Linkage similarities between active clusters, indexed by representative
  // (smallest leaf). Complete linkage only ever lowers these values.
  std::vector<double> link(n * (n - 1) / 2);
  const auto cell = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) link[cell(i, j)] = sims.at(i, j);

  std::vector<bool> active(n, true);
  std::vector<std::size_t> node_id(n), size(n, 1);
  std::iota(node_id.begin(), node_id.end(), 0);

  // Best partner among active clusters with a larger representative.
  std::vector<std::size_t> nn(n, 0);
  std::vector<double> nn_sim(n, -1.0);
  const auto refresh = [&](std::size_t i) {
    nn_sim[i] = -1.0;
    nn[i] = n;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (active[j] && link[cell(i, j)] > nn_sim[i]) {
        nn_sim[i] = link[cell(i, j)];
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i + 1 < n; ++i) refresh(i);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && nn[i] < n && (a == n || nn_sim[i] > nn_sim[a])) a = i;
    }
    const std::size_t b = nn[a];
    const double s = nn_sim[a];

    d.merges.push_back({node_id[a], node_id[b], s, 1.0 - s, size[a] + size[b]});
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      link[cell(a, k)] = std::min(link[cell(a, k)], link[cell(b, k)]);
    }
    active[b] = false;
    node_id[a] = n + step;
    size[a] += size[b];

    refresh(a);
    for (std::size_t k = 0; k < b; ++k) {
      if (active[k] && k != a && (nn[k] == a || nn[k] == b)) refresh(k);
    }
  }
  return d;
}

std::vector<std::vector<std::size_t>> cut_dendrogram(const Dendrogram& dendrogram, double tau) {
  const std::size_t n = dendrogram.leaf_count;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Any leaf of each dendrogram node, so merges can be replayed on leaves.
  std::vector<std::size_t> leaf_of(n + dendrogram.merges.size());
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const auto& m = dendrogram.merges[s];
    leaf_of[n + s] = leaf_of[m.left];
    if (m.similarity >= tau) {
      const auto ra = find(leaf_of[m.left]), rb = find(leaf_of[m.right]);
      parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    const auto root = find(leaf);
    if (slot[root] == n) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].push_back(leaf);
  }
  return clusters;
}

std::size_t medoid_index(const SimilarityMatrix& sims, std::span<const std::size_t> members) {
  if (members.empty()) throw ParameterError("cannot derive a reference from an empty cluster");
  std::size_t best = members.front();
  double best_sum = -1.0;
  for (std::size_t i : members) {
    double sum = 0.0;
    for (std::size_t j : members) sum += sims.at(i, j);
    if (sum > best_sum) {
      best_sum = sum;
      best = i;
    }
  }
  return best;
}

std::size_t medoid_index(std::span<const ZSignature> members) {
  if (members.empty()) throw ParameterError("cannot derive a reference from an empty cluster");
  const auto sims = SimilarityMatrix::compute(members, 1);
  std::vector<std::size_t> all(members.size());
  std::iota(all.begin(), all.end(), 0);
  return medoid_index(sims, all);
}

ZSignature derive_reference(std::span<const ZSignature> members) {
  return members[medoid_index(members)];
}

ClusteringResult hcluster(std::span<const AttackSignature> attacks, const SimilarityMatrix& sims,
                          double tau) {
  if (attacks.empty()) throw ParameterError("hcluster needs at least one attack");
  if (sims.size() != attacks.size())
    throw ContractError("similarity matrix does not match the attack list");
  check_tau(tau);

  ClusteringResult result;
  result.dendrogram = complete_linkage(sims);
  for (const auto& members : cut_dendrogram(result.dendrogram, tau)) {
    ScenarioCluster cluster;
    for (auto i : members) cluster.members.push_back(attacks[i].cluster_id);
    cluster.medoid = medoid_index(sims, members);
    cluster.reference = attacks[cluster.medoid].signature;
    result.clusters.push_back(std::move(cluster));
  }
  return result;
}

ClusteringResult hcluster(std::span<const AttackSignature> attacks, double tau, unsigned threads) {
  if (attacks.empty()) throw ParameterError("hcluster needs at least one attack");
  return hcluster(attacks, SimilarityMatrix::compute(attacks, threads), tau);
}

std::string dendrogram_to_json(const Dendrogram& d, std::span<const AttackSignature> leaves) {
  nlohmann::ordered_json j;
  j["leaves"] = nlohmann::ordered_json::array();
  for (const auto& leaf : leaves) j["leaves"].push_back(leaf.cluster_id);
  j["merges"] = nlohmann::ordered_json::array();
  for (const auto& m : d.merges) {
    nlohmann::ordered_json item;
    item["left"] = m.left;
    item["right"] = m.right;
    item["distance"] = m.distance;
    item["similarity"] = m.similarity;
    item["size"] = m.size;
    j["merges"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

std::string dendrogram_to_dot(const Dendrogram& d, std::span<const AttackSignature> leaves) {
  std::ostringstream out;
  out << "digraph dendrogram {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < d.leaf_count; ++i) {
    out << "  n" << i << " [label=" << nlohmann::json(leaves[i].cluster_id).dump() << "];\n";
  }
  for (std::size_t s = 0; s < d.merges.size(); ++s) {
    const auto& m = d.merges[s];
    const auto id = d.leaf_count + s;
    std::ostringstream dist;
    dist.precision(4);
    dist << std::fixed << m.distance;
    out << "  n" << id << " [shape=point, xlabel=\"" << dist.str() << "\"];\n";
    out << "  n" << m.left << " -> n" << id << ";\n";
    out << "  n" << m.right << " -> n" << id << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace motifsig
