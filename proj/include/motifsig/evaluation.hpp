#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motifsig/classifier.hpp"

namespace motifsig {

struct ScenarioRates {
  std::string scenario;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double tpr = 0.0;  // 0 when the scenario has no positives
  double fpr = 0.0;  // 0 when the scenario has no negatives
  double accuracy = 0.0;
};

struct SupervisedReport {
  std::vector<ScenarioRates> per_scenario;  // sorted by scenario name
  double macro_tpr = 0.0;
  double macro_fpr = 0.0;
  double macro_accuracy = 0.0;
};

/// One-vs-rest rates for every scenario that occurs in the ground truth or
/// as a predicted label. UNMATCHED predicts "no" for all scenarios.
/// Throws ParameterError if an assignment's cluster_id lacks a ground-truth label.
SupervisedReport eval_supervised(std::span<const Assignment> assignments,
                                 const std::map<std::string, std::string>& ground_truth);

/// A labeled group of attack ids; one side of an overlap comparison.
struct Group {
  std::string name;
  std::vector<std::string> members;
};

struct OverlapReport {
  double equivalent = 0.0;
  double homogeneity = 0.0;
};

/// Equivalent: mean over reference groups of the Jaccard index of their
/// greedily matched unsupervised cluster (descending Jaccard, one-to-one;
/// unmatched references score 0).
/// Homogeneity: over unsupervised clusters holding at least one referenced
/// attack, the share of the most frequent reference scenario, weighted by
/// cluster size.
/// Reference ids must be a subset of the unsupervised ids; ids may not repeat
/// within one side. Violations throw ParameterError.
OverlapReport eval_overlap(std::span<const Group> reference, std::span<const Group> unsupervised);

/// Groups built from reference assignments (one per matched label, in
/// reference order) and from flat clusters ("cluster-<k>").
std::vector<Group> groups_from_assignments(std::span<const Assignment> assignments,
                                           const ReferenceSet& refs);
std::vector<Group> groups_from_clusters(std::span<const ScenarioCluster> clusters);
/// Ground-truth partition by label, ordered by first appearance.
std::vector<Group> groups_from_labels(std::span<const AttackSignature> attacks);

struct ExtremePair {
  double similarity = 0.0;
  std::string first;   // cluster ids
  std::string second;
  std::string other_scenario;  // only for inter-class extremes
};

/// Lowest similarity among attacks of one scenario and highest similarity to
/// an attack of any other scenario.
struct ClassSeparation {
  std::string scenario;
  std::size_t attacks = 0;
  std::optional<ExtremePair> lowest_intra;   // absent for single-attack scenarios
  std::optional<ExtremePair> highest_inter;  // absent with only one scenario
};

/// Every attack must carry a label (ParameterError otherwise). Rows are
/// ordered by scenario name.
std::vector<ClassSeparation> class_separation(std::span<const AttackSignature> attacks,
                                              const SimilarityMatrix& sims);

/// Feasible threshold range: tau in (max_inter, min_intra] keeps scenarios apart.
struct TauWindow {
  std::uint64_t size_upper_bound = 0;  // largest host count included (0 = all)
  std::size_t attacks = 0;
  double min_intra = 1.0;
  double max_inter = 0.0;

  double width() const { return min_intra - max_inter; }
  double midpoint() const { return 0.5 * (min_intra + max_inter); }
  bool feasible() const { return min_intra > max_inter; }
};

TauWindow tau_window(std::span<const AttackSignature> attacks, const SimilarityMatrix& sims);

/// One window per distinct host count h, over all attacks with hosts <= h.
/// Attacks must carry `hosts` (ParameterError otherwise).
std::vector<TauWindow> tau_windows_by_size(std::span<const AttackSignature> attacks,
                                           const SimilarityMatrix& sims);

}  // namespace motifsig
