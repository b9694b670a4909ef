#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "motifsig/alert.hpp"

namespace motifsig {

enum class ScenarioKind { ddos, scan, dscan, worm, expl, conv };

inline constexpr std::array<ScenarioKind, 6> kAllScenarios = {
    ScenarioKind::ddos, ScenarioKind::scan, ScenarioKind::dscan,
    ScenarioKind::worm, ScenarioKind::expl, ScenarioKind::conv};

std::string_view scenario_name(ScenarioKind kind);
/// Throws ParameterError for unknown names.
ScenarioKind parse_scenario(std::string_view name);

/// Shape of one synthetic attack. `population` counts every host involved,
/// attackers and targets alike.
struct ScenarioParams {
  ScenarioKind kind = ScenarioKind::ddos;
  std::uint32_t population = 100;
  double alerts_per_entity = 1.5;      // mean alerts per attacker/target, in [1, 2]
  double port_reuse_prob = 0.5;        // chance to repeat the previous source port
  std::uint32_t spread_factor = 5;     // expl/conv fan-out
  double attacker_target_ratio = 0.5;  // dscan: attacker share of the population
  double worm_target_fraction = 0.1;   // worm: share of other hosts each host attacks
  std::uint64_t seed = 0;
};

/// Smallest population the kind can be generated with.
std::uint32_t min_population(const ScenarioParams& params);

/// Generates one labeled attack. Deterministic in `params` (seed included).
/// Throws ParameterError for out-of-range parameters or a population below
/// min_population.
AlertCluster generate(const ScenarioParams& params, std::string cluster_id);
AlertCluster generate(const ScenarioParams& params);

/// `count` attacks of `kind` for each population lo, lo+step, ..., <= hi.
struct CorpusEntry {
  ScenarioKind kind = ScenarioKind::ddos;
  std::uint32_t population_lo = 100;
  std::uint32_t population_hi = 100;
  std::uint32_t population_step = 100;
  std::uint32_t count = 1;
};

/// Base parameters (alpha, p, f, theta, mu) come from `base`; kind,
/// population and seed are set per attack. Cluster ids are
/// "<kind>-<population>-<n>" where n is the attack's position in the corpus,
/// and each attack's seed is derived from `seed` and that position.
std::vector<AlertCluster> generate_corpus(const std::vector<CorpusEntry>& entries,
                                          std::uint64_t seed,
                                          const ScenarioParams& base = ScenarioParams{});

}  // namespace motifsig
