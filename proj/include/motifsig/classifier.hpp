#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifsig/signature.hpp"
#include "motifsig/similarity.hpp"

namespace motifsig {

inline constexpr std::string_view kUnmatched = "UNMATCHED";

struct Assignment {
  std::string cluster_id;
  std::string label;  // reference name, or kUnmatched
  double best_similarity = 0.0;

  bool matched() const { return label != kUnmatched; }
};

/// Assigns each attack to its most similar reference if that similarity
/// reaches tau; earlier references win ties. Throws ParameterError on an
/// empty reference set or tau outside [0, 1].
std::vector<Assignment> classify(std::span<const AttackSignature> attacks, const ReferenceSet& refs,
                                 double tau);

/// Symmetric pairwise similarity table, stored as the strict upper triangle.
class SimilarityMatrix {
 public:
  /// Computes all pairs, split across `threads` workers (0 = hardware concurrency).
  static SimilarityMatrix compute(std::span<const ZSignature> sigs, unsigned threads = 0);
  static SimilarityMatrix compute(std::span<const AttackSignature> sigs, unsigned threads = 0);

  std::size_t size() const noexcept { return n_; }
  /// 1 on the diagonal.
  double at(std::size_t i, std::size_t j) const;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> upper_;
};

/// One agglomeration step. Leaves are 0..k-1; the cluster formed by merge s
/// gets id k + s.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double similarity = 0.0;  // complete linkage: lowest pairwise similarity in the union
  double distance = 0.0;    // 1 - similarity
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaf_count = 0;
  std::vector<Merge> merges;  // distances non-decreasing
};

/// Complete-linkage agglomeration over distance 1 - similarity. At every step
/// the closest pair of clusters merges; ties go to the pair with the lowest
/// (first, second) representative leaf indices.
Dendrogram complete_linkage(const SimilarityMatrix& sims);

/// Flat clusters after applying every merge whose linkage similarity is at
/// least tau (cut at distance 1 - tau). Members are leaf indices, ascending;
/// clusters are ordered by their smallest member.
std::vector<std::vector<std::size_t>> cut_dendrogram(const Dendrogram& dendrogram, double tau);

/// Most typical member: maximizes the summed similarity to all members,
/// itself included. Lowest index wins ties. Throws ParameterError if empty.
std::size_t medoid_index(const SimilarityMatrix& sims, std::span<const std::size_t> members);
std::size_t medoid_index(std::span<const ZSignature> members);
ZSignature derive_reference(std::span<const ZSignature> members);

struct ScenarioCluster {
  std::vector<std::string> members;  // cluster ids, in input order
  std::size_t medoid = 0;             // input index of the derived reference
  ZSignature reference;
};

struct ClusteringResult {
  Dendrogram dendrogram;
  std::vector<ScenarioCluster> clusters;
};

/// Hierarchical clustering cut at 1 - tau, plus a derived reference per cluster.
/// Throws ParameterError if `attacks` is empty or tau is outside [0, 1].
ClusteringResult hcluster(std::span<const AttackSignature> attacks, double tau, unsigned threads = 0);
ClusteringResult hcluster(std::span<const AttackSignature> attacks, const SimilarityMatrix& sims,
                          double tau);

/// Dendrogram as {"leaves":[ids], "merges":[{left,right,distance,similarity,size}]}.
std::string dendrogram_to_json(const Dendrogram& d, std::span<const AttackSignature> leaves);
/// Graphviz rendering; internal nodes are labeled with their merge distance.
std::string dendrogram_to_dot(const Dendrogram& d, std::span<const AttackSignature> leaves);

}  // namespace motifsig
