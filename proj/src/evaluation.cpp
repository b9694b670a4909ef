#include "motifsig/evaluation.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

const std::string& label_of(const AttackSignature& a) {
  if (!a.label) throw ParameterError("attack '" + a.cluster_id + "' has no scenario label");
  return *a.label;
}

TauWindow window_over(std::span<const AttackSignature> attacks, const SimilarityMatrix& sims,
                      const std::vector<std::size_t>& subset) {
  TauWindow w;
  w.attacks = subset.size();
  for (std::size_t x = 0; x < subset.size(); ++x) {
    for (std::size_t y = x + 1; y < subset.size(); ++y) {
      const auto i = subset[x], j = subset[y];
      const double s = sims.at(i, j);
      if (label_of(attacks[i]) == label_of(attacks[j]))
        w.min_intra = std::min(w.min_intra, s);
      else
        w.max_inter = std::max(w.max_inter, s);
    }
  }
  return w;
}

}  // namespace

SupervisedReport eval_supervised(std::span<const Assignment> assignments,
                                 const std::map<std::string, std::string>& ground_truth) {
  std::vector<std::pair<const std::string*, const std::string*>> rows;  // (truth, predicted)
  std::set<std::string> scenarios;
  for (const auto& a : assignments) {
    auto it = ground_truth.find(a.cluster_id);
    if (it == ground_truth.end())
      throw ParameterError("no ground-truth label for cluster '" + a.cluster_id + "'");
    rows.emplace_back(&it->second, &a.label);
    scenarios.insert(it->second);
    if (a.matched()) scenarios.insert(a.label);
  }

  SupervisedReport report;
  for (const auto& scenario : scenarios) {
    ScenarioRates r;
    r.scenario = scenario;
    for (const auto& [truth, predicted] : rows) {
      const bool actual = *truth == scenario;
      const bool said = *predicted == scenario;
      if (actual && said) ++r.tp;
      else if (!actual && said) ++r.fp;
      else if (actual) ++r.fn;
      else ++r.tn;
    }
    r.tpr = ratio(r.tp, r.tp + r.fn);
    r.fpr = ratio(r.fp, r.fp + r.tn);
    r.accuracy = ratio(r.tp + r.tn, rows.size());
    report.per_scenario.push_back(r);
  }
  if (!report.per_scenario.empty()) {
    for (const auto& r : report.per_scenario) {
      report.macro_tpr += r.tpr;
      report.macro_fpr += r.fpr;
      report.macro_accuracy += r.accuracy;
    }
    const auto k = static_cast<double>(report.per_scenario.size());
    report.macro_tpr /= k;
    report.macro_fpr /= k;
    report.macro_accuracy /= k;
  }
  return report;
}

OverlapReport eval_overlap(std::span<const Group> reference, std::span<const Group> unsupervised) {
  std::unordered_map<std::string, std::size_t> unsup_of;
  for (std::size_t u = 0; u < unsupervised.size(); ++u)
    for (const auto& id : unsupervised[u].members)
      if (!unsup_of.emplace(id, u).second)
        throw ParameterError("attack '" + id + "' appears in two unsupervised clusters");

  std::unordered_map<std::string, std::size_t> ref_of;
  for (std::size_t r = 0; r < reference.size(); ++r)
    for (const auto& id : reference[r].members) {
      if (!unsup_of.contains(id))
        throw ParameterError("reference attack '" + id + "' is missing from the unsupervised run");
      if (!ref_of.emplace(id, r).second)
        throw ParameterError("attack '" + id + "' appears in two reference clusters");
    }

  // Intersection sizes per (reference, unsupervised) pair.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;
  for (const auto& [id, r] : ref_of) ++overlap[{r, unsup_of.at(id)}];

  struct Candidate {
    double jaccard;
    std::size_t ref, unsup;
  };
  std::vector<Candidate> candidates;
  for (const auto& [key, inter] : overlap) {
    const auto [r, u] = key;
    const auto uni = reference[r].members.size() + unsupervised[u].members.size() - inter;
    candidates.push_back({ratio(inter, uni), r, u});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
    return std::tie(a.ref, a.unsup) < std::tie(b.ref, b.unsup);
  });

  OverlapReport report;
  std::vector<bool> ref_used(reference.size()), unsup_used(unsupervised.size());
  double jaccard_sum = 0.0;
  for (const auto& c : candidates) {
    if (ref_used[c.ref] || unsup_used[c.unsup]) continue;
    ref_used[c.ref] = unsup_used[c.unsup] = true;
    jaccard_sum += c.jaccard;
  }
  report.equivalent = reference.empty() ? 0.0 : jaccard_sum / static_cast<double>(reference.size());

  std::size_t modal_total = 0, size_total = 0;
  for (const auto& cluster : unsupervised) {
    std::unordered_map<std::size_t, std::size_t> per_scenario;
    for (const auto& id : cluster.members)
      if (auto it = ref_of.find(id); it != ref_of.end()) ++per_scenario[it->second];
    if (per_scenario.empty()) continue;
    std::size_t modal = 0;
    for (const auto& [r, count] : per_scenario) modal = std::max(modal, count);
    modal_total += modal;
    size_total += cluster.members.size();
  }
  report.homogeneity = ratio(modal_total, size_total);
  return report;
}

std::vector<Group> groups_from_assignments(std::span<const Assignment> assignments,
                                           const ReferenceSet& refs) {
  std::vector<Group> groups;
  for (const auto& e : refs.entries()) groups.push_back({e.name, {}});
  for (const auto& a : assignments) {
    if (!a.matched()) continue;
    for (auto& g : groups)
      if (g.name == a.label) g.members.push_back(a.cluster_id);
  }
  std::erase_if(groups, [](const Group& g) { return g.members.empty(); });
  return groups;
}

std::vector<Group> groups_from_clusters(std::span<const ScenarioCluster> clusters) {
  std::vector<Group> groups;
  for (std::size_t k = 0; k < clusters.size(); ++k)
    groups.push_back({"cluster-" + std::to_string(k), clusters[k].members});
  return groups;
}

std::vector<Group> groups_from_labels(std::span<const AttackSignature> attacks) {
  std::vector<Group> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& a : attacks) {
    const auto& label = label_of(a);
    auto [it, inserted] = slot.try_emplace(label, groups.size());
    if (inserted) groups.push_back({label, {}});
    groups[it->second].members.push_back(a.cluster_id);
  }
  return groups;
}

std::vector<ClassSeparation> class_separation(std::span<const AttackSignature> attacks,
                                              const SimilarityMatrix& sims) {
  if (sims.size() != attacks.size())
    throw ContractError("similarity matrix does not match the attack list");
  std::map<std::string, ClassSeparation> rows;
  for (const auto& a : attacks) {
    auto& row = rows[label_of(a)];
    row.scenario = *a.label;
    ++row.attacks;
  }
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = i + 1; j < attacks.size(); ++j) {
      const double s = sims.at(i, j);
      const auto& li = *attacks[i].label;
      const auto& lj = *attacks[j].label;
      if (li == lj) {
        auto& low = rows[li].lowest_intra;
        if (!low || s < low->similarity)
          low = ExtremePair{s, attacks[i].cluster_id, attacks[j].cluster_id, ""};
      } else {
        for (const auto& [self, other, self_id, other_id] :
             {std::tuple{li, lj, attacks[i].cluster_id, attacks[j].cluster_id},
              std::tuple{lj, li, attacks[j].cluster_id, attacks[i].cluster_id}}) {
          auto& high = rows[self].highest_inter;
          if (!high || s > high->similarity) high = ExtremePair{s, self_id, other_id, other};
        }
      }
    }
  }
  std::vector<ClassSeparation> result;
  for (auto& [name, row] : rows) result.push_back(std::move(row));
  return result;
}

TauWindow tau_window(std::span<const AttackSignature> attacks, const SimilarityMatrix& sims) {
  if (sims.size() != attacks.size())
    throw ContractError("similarity matrix does not match the attack list");
  std::vector<std::size_t> all(attacks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return window_over(attacks, sims, all);
}

std::vector<TauWindow> tau_windows_by_size(std::span<const AttackSignature> attacks,
                                           const SimilarityMatrix& sims) {
  if (sims.size() != attacks.size())
    throw ContractError("similarity matrix does not match the attack list");
  std::set<std::uint64_t> sizes;
  for (const auto& a : attacks) {
    if (!a.hosts) throw ParameterError("attack '" + a.cluster_id + "' has no host count");
    sizes.insert(*a.hosts);
  }
  std::vector<TauWindow> result;
  for (auto bound : sizes) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < attacks.size(); ++i)
      if (*attacks[i].hosts <= bound) subset.push_back(i);
    auto w = window_over(attacks, sims, subset);
    w.size_upper_bound = bound;
    result.push_back(w);
  }
  return result;
}

}  // namespace motifsig
