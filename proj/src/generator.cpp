#include "motifsig/generator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_set>

#include "motifsig/errors.hpp"
#include "rng.hpp"

namespace motifsig {

namespace {

using Rng = std::mt19937_64;

constexpr std::uint16_t kMinPort = 1024;

std::uint16_t random_port(Rng& rng) {
  return static_cast<std::uint16_t>(std::uniform_int_distribution<int>(kMinPort, 65535)(rng));
}

std::string dotted(std::uint32_t ip) {
  return std::to_string(ip >> 24) + "." + std::to_string((ip >> 16) & 0xFF) + "." +
         std::to_string((ip >> 8) & 0xFF) + "." + std::to_string(ip & 0xFF);
}

/// `count` distinct addresses, skipping 0.0.0.0 and 255.255.255.255.
std::vector<std::string> draw_hosts(std::uint32_t count, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(1, 0xFFFFFFFEu);
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::string> hosts;
  hosts.reserve(count);
  while (hosts.size() < count) {
    const auto ip = pick(rng);
    if (seen.insert(ip).second) hosts.push_back(dotted(ip));
  }
  return hosts;
}

/// Source port of an attacker: repeats the previous one with probability p.
class SourcePort {
 public:
  std::uint16_t next(Rng& rng, double reuse_prob) {
    if (!last_ || !std::bernoulli_distribution(reuse_prob)(rng)) last_ = random_port(rng);
    return *last_;
  }

 private:
  std::optional<std::uint16_t> last_;
};

/// floor(alpha) alerts plus one more with probability frac(alpha): mean alpha.
std::uint32_t alert_count(Rng& rng, double alpha) {
  const double whole = std::floor(alpha);
  auto n = static_cast<std::uint32_t>(whole);
  if (std::bernoulli_distribution(alpha - whole)(rng)) ++n;
  return n;
}

// ceil() that ignores floating-point noise just above an integer.
std::uint32_t ceil_count(double x) { return static_cast<std::uint32_t>(std::ceil(x - 1e-9)); }

std::uint32_t dscan_attackers(const ScenarioParams& p) {
  const auto n = ceil_count(p.attacker_target_ratio * p.population);
  return std::clamp<std::uint32_t>(n, 1, p.population - 1);
}

void validate(const ScenarioParams& p) {
  if (!(p.alerts_per_entity >= 1.0))
    throw ParameterError("alerts per entity must be at least 1");
  if (!(p.port_reuse_prob >= 0.0 && p.port_reuse_prob <= 1.0))
    throw ParameterError("port reuse probability must lie in [0, 1]");
  if (p.spread_factor < 1) throw ParameterError("spread factor must be at least 1");
  if (!(p.attacker_target_ratio > 0.0 && p.attacker_target_ratio < 1.0))
    throw ParameterError("attacker/target ratio must lie in (0, 1)");
  if (!(p.worm_target_fraction > 0.0 && p.worm_target_fraction <= 1.0))
    throw ParameterError("worm target fraction must lie in (0, 1]");
  const auto minimum = min_population(p);
  if (p.population < minimum)
    throw ParameterError(std::string(scenario_name(p.kind)) + " needs a population of at least " +
                         std::to_string(minimum) + ", got " + std::to_string(p.population));
}

Alert make_alert(const std::string& src, std::uint16_t sport, const std::string& dst,
                 std::uint16_t dport) {
  return Alert{src, sport, dst, dport, {}};
}

void gen_ddos(const ScenarioParams& p, Rng& rng, std::vector<Alert>& out) {
  const auto hosts = draw_hosts(p.population, rng);
  const auto& victim = hosts[0];
  const auto service = random_port(rng);
  for (std::size_t a = 1; a < hosts.size(); ++a) {
    SourcePort port;
    for (auto k = alert_count(rng, p.alerts_per_entity); k > 0; --k)
      out.push_back(make_alert(hosts[a], port.next(rng, p.port_reuse_prob), victim, service));
  }
}

void gen_scan(const ScenarioParams& p, Rng& rng, std::vector<Alert>& out) {
  const auto hosts = draw_hosts(p.population, rng);
  const auto& attacker = hosts[0];
  const auto service = random_port(rng);
  SourcePort port;
  for (std::size_t t = 1; t < hosts.size(); ++t) {
    for (auto k = alert_count(rng, p.alerts_per_entity); k > 0; --k)
      out.push_back(make_alert(attacker, port.next(rng, p.port_reuse_prob), hosts[t], service));
  }
}

void gen_dscan(const ScenarioParams& p, Rng& rng, std::vector<Alert>& out) {
  const auto hosts = draw_hosts(p.population, rng);
  const auto attackers = dscan_attackers(p);
  const auto service = random_port(rng);
  std::vector<SourcePort> ports(attackers);

  // Shuffled targets and attackers are paired round-robin until both sides
  // are covered; further alerts on a target come from uniformly chosen attackers.
  const std::size_t target_count = hosts.size() - attackers;
  std::vector<std::size_t> targets(target_count);
  std::iota(targets.begin(), targets.end(), attackers);
  std::shuffle(targets.begin(), targets.end(), rng);
  std::vector<std::vector<std::uint32_t>> dealt(target_count);
  for (std::size_t i = 0; i < std::max<std::size_t>(attackers, target_count); ++i)
    dealt[i % target_count].push_back(static_cast<std::uint32_t>(i % attackers));

  std::uniform_int_distribution<std::uint32_t> any_attacker(0, attackers - 1);
  for (std::size_t i = 0; i < target_count; ++i) {
    const auto k = std::max<std::size_t>(alert_count(rng, p.alerts_per_entity), dealt[i].size());
    for (std::size_t n = 0; n < k; ++n) {
      const auto a = n < dealt[i].size() ? dealt[i][n] : any_attacker(rng);
      out.push_back(make_alert(hosts[a], ports[a].next(rng, p.port_reuse_prob), hosts[targets[i]],
                               service));
    }
  }
}

void gen_worm(const ScenarioParams& p, Rng& rng, std::vector<Alert>& out) {
  const auto hosts = draw_hosts(p.population, rng);
  const auto service = random_port(rng);
  const auto victims = std::max<std::uint32_t>(
      1, ceil_count(p.worm_target_fraction * (p.population - 1)));

  std::vector<std::size_t> others(hosts.size() - 1);
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    // Partial Fisher-Yates over every host except h.
    for (std::size_t i = 0, j = 0; i < hosts.size(); ++i)
      if (i != h) others[j++] = i;
    for (std::uint32_t v = 0; v < victims; ++v) {
      std::uniform_int_distribution<std::size_t> pick(v, others.size() - 1);
      std::swap(others[v], others[pick(rng)]);
      out.push_back(make_alert(hosts[h], random_port(rng), hosts[others[v]], service));
    }
  }
}

// Breadth-first spreading tree: each compromised host reaches f new hosts
// until the population is exhausted. Yields (parent, child) host indices.
std::vector<std::pair<std::size_t, std::size_t>> spreading_tree(std::uint32_t population,
                                                                std::uint32_t fanout) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::deque<std::size_t> frontier{0};
  std::size_t next = 1;
  while (next < population && !frontier.empty()) {
    const auto parent = frontier.front();
    frontier.pop_front();
    for (std::uint32_t c = 0; c < fanout && next < population; ++c) {
      edges.emplace_back(parent, next);
      frontier.push_back(next++);
    }
  }
  return edges;
}

void gen_tree(const ScenarioParams& p, Rng& rng, bool converge, std::vector<Alert>& out) {
  const auto hosts = draw_hosts(p.population, rng);
  for (const auto& [parent, child] : spreading_tree(p.population, p.spread_factor)) {
    const auto& src = converge ? hosts[child] : hosts[parent];
    const auto& dst = converge ? hosts[parent] : hosts[child];
    for (auto k = alert_count(rng, p.alerts_per_entity); k > 0; --k)
      out.push_back(make_alert(src, random_port(rng), dst, random_port(rng)));
  }
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::ddos: return "ddos";
    case ScenarioKind::scan: return "scan";
    case ScenarioKind::dscan: return "dscan";
    case ScenarioKind::worm: return "worm";
    case ScenarioKind::expl: return "expl";
    case ScenarioKind::conv: return "conv";
  }
  return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (auto kind : kAllScenarios)
    if (scenario_name(kind) == name) return kind;
  throw ParameterError("unknown scenario '" + std::string(name) +
                       "' (expected ddos, scan, dscan, worm, expl or conv)");
}

std::uint32_t min_population(const ScenarioParams& params) {
  switch (params.kind) {
    case ScenarioKind::dscan: return 3;
    case ScenarioKind::expl:
    case ScenarioKind::conv: return 1 + params.spread_factor;
    default: return 2;
  }
}

AlertCluster generate(const ScenarioParams& params, std::string cluster_id) {
  validate(params);
  Rng rng(params.seed);
  AlertCluster cluster;
  cluster.cluster_id = std::move(cluster_id);
  cluster.label = std::string(scenario_name(params.kind));
  switch (params.kind) {
    case ScenarioKind::ddos: gen_ddos(params, rng, cluster.alerts); break;
    case ScenarioKind::scan: gen_scan(params, rng, cluster.alerts); break;
    case ScenarioKind::dscan: gen_dscan(params, rng, cluster.alerts); break;
    case ScenarioKind::worm: gen_worm(params, rng, cluster.alerts); break;
    case ScenarioKind::expl: gen_tree(params, rng, false, cluster.alerts); break;
    case ScenarioKind::conv: gen_tree(params, rng, true, cluster.alerts); break;
  }
  return cluster;
}

AlertCluster generate(const ScenarioParams& params) {
  return generate(params, std::string(scenario_name(params.kind)) + "-" + std::to_string(params.seed));
}

std::vector<AlertCluster> generate_corpus(const std::vector<CorpusEntry>& entries,
                                          std::uint64_t seed, const ScenarioParams& base) {
  std::vector<AlertCluster> corpus;
  std::uint64_t index = 0;
  for (const auto& e : entries) {
    if (e.population_step == 0) throw ParameterError("population step must be positive");
    if (e.population_hi < e.population_lo)
      throw ParameterError("population range is empty");
    for (auto psi = e.population_lo; psi <= e.population_hi; psi += e.population_step) {
      for (std::uint32_t n = 0; n < e.count; ++n, ++index) {
        ScenarioParams params = base;
        params.kind = e.kind;
        params.population = psi;
        params.seed = detail::derive_seed(seed, index);
        corpus.push_back(generate(params, std::string(scenario_name(e.kind)) + "-" +
                                              std::to_string(psi) + "-" + std::to_string(index)));
      }
      if (e.population_hi - psi < e.population_step) break;
    }
  }
  return corpus;
}

}  // namespace motifsig
