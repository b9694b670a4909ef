#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "motifsig/alert.hpp"
#include "motifsig/classifier.hpp"
#include "motifsig/comm_graph.hpp"
#include "motifsig/errors.hpp"
#include "motifsig/evaluation.hpp"
#include "motifsig/generator.hpp"
#include "motifsig/motif.hpp"
#include "motifsig/signature.hpp"
#include "motifsig/similarity.hpp"
#include "../src/parallel.hpp"

namespace motifsig::cli {

namespace {

using nlohmann::ordered_json;

/// Bad flag values that only surface once the command runs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable/unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content, Streams io) {
  if (path == "-") {
    io.out << content;
    io.out.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<AttackSignature> load_signatures(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return read_signatures(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.field(), path + ": " + e.what());
  }
}

ClusterFormat format_for(const std::string& flag, const std::string& path) {
  if (!flag.empty()) return parse_format(flag);
  const bool is_csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return is_csv ? ClusterFormat::csv : ClusterFormat::jsonl;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// "100" or "100:400" or "100:400:100".
CorpusEntry parse_population(const std::string& text) {
  CorpusEntry e;
  std::vector<std::uint32_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      parts.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("--psi expects N or LO:HI[:STEP], got '" + text + "'");
    }
  }
  if (parts.empty() || parts.size() > 3)
    throw UsageError("--psi expects N or LO:HI[:STEP], got '" + text + "'");
  e.population_lo = parts[0];
  e.population_hi = parts.size() > 1 ? parts[1] : parts[0];
  e.population_step = parts.size() > 2 ? parts[2] : 100;
  if (e.population_step == 0 || e.population_hi < e.population_lo)
    throw UsageError("--psi range '" + text + "' is empty");
  return e;
}

std::vector<ScenarioKind> parse_kinds(const std::string& text) {
  if (text == "all") return {kAllScenarios.begin(), kAllScenarios.end()};
  std::vector<ScenarioKind> kinds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      kinds.push_back(parse_scenario(item));
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }
  if (kinds.empty()) throw UsageError("--kinds is empty");
  return kinds;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string kinds = "all";
  std::string psi = "100";
  std::uint32_t count = 1;
  std::uint64_t seed = 0;
  std::string format = "jsonl";
  std::string out = "-";
  ScenarioParams base;
};

void cmd_gen(const GenOptions& o, Streams io) {
  auto range = parse_population(o.psi);
  std::vector<CorpusEntry> entries;
  for (auto kind : parse_kinds(o.kinds)) {
    auto e = range;
    e.kind = kind;
    e.count = o.count;
    entries.push_back(e);
  }
  std::vector<AlertCluster> corpus;
  try {
    corpus = generate_corpus(entries, o.seed, o.base);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  write_file(o.out, serialize_clusters(corpus, parse_format(o.format)), io);
}

// ---------------------------------------------------------------- sign

struct SignOptions {
  std::string in;
  std::string format;
  std::string out = "-";
  std::uint64_t samples = kDefaultEnsembleSamples;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void cmd_sign(const SignOptions& o, Streams io) {
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  const auto clusters = parse_clusters(read_file(o.in), format_for(o.format, o.in));

  std::vector<AttackSignature> sigs(clusters.size());
  const unsigned workers = detail::resolve_threads(o.threads);
  // Many attacks: one attack per worker. Few attacks: parallelize each ensemble.
  const bool per_attack = clusters.size() >= workers;
  detail::parallel_for(clusters.size(), per_attack ? workers : 1, [&](std::size_t i) {
    const auto& c = clusters[i];
    try {
      const auto graph = build_graph(c);
      sigs[i] = AttackSignature{c.cluster_id,
                                sign_graph(graph, o.samples, o.seed, per_attack ? 1 : workers),
                                c.label, graph.stats().host_count};
    } catch (const std::exception& e) {
      throw ParseError(0, "", "cluster '" + c.cluster_id + "': " + e.what());
    }
  });

  std::ostringstream out;
  write_signatures(out, sigs);
  write_file(o.out, out.str(), io);
}

// ---------------------------------------------------------------- sim

void cmd_sim(const std::string& a, const std::string& b, Streams io) {
  const auto first = load_signatures(a);
  const auto second = load_signatures(b);
  if (first.empty()) throw ParseError(0, "", a + ": no signature");
  if (second.empty()) throw ParseError(0, "", b + ": no signature");
  io.out << fixed(similarity(first.front().signature, second.front().signature).value, 6) << '\n';
}

// ---------------------------------------------------------------- refs

void cmd_refs(const std::string& in, const std::string& out, const std::string& name_by,
              Streams io) {
  ReferenceSet refs;
  for (const auto& sig : load_signatures(in)) {
    std::string name = sig.cluster_id;
    if (name_by == "label") {
      if (!sig.label) throw ParseError(0, "label", "signature '" + sig.cluster_id + "' has no label");
      name = *sig.label;
    }
    const auto& entries = refs.entries();
    if (std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; }))
      continue;  // first attack per name wins
    refs.add(name, sig.signature);
  }
  write_file(out, reference_set_to_json(refs), io);
}

// ---------------------------------------------------------------- classify

std::string assignments_csv(const std::vector<Assignment>& assignments) {
  std::string csv = "cluster_id,label,similarity\n";
  for (const auto& a : assignments) {
    csv += a.cluster_id + "," + a.label + "," + fixed(a.best_similarity, 6) + "\n";
  }
  return csv;
}

void cmd_classify(const std::string& in, const std::string& refs_path, double tau,
                  const std::string& out, Streams io) {
  const auto sigs = load_signatures(in);
  const auto refs = reference_set_from_json(read_file(refs_path));
  if (refs.empty()) throw ParseError(0, "", refs_path + ": reference set is empty");
  write_file(out, assignments_csv(classify(sigs, refs, tau)), io);
}

// ---------------------------------------------------------------- cluster

std::string clusters_json(const std::vector<ScenarioCluster>& clusters,
                          std::span<const AttackSignature> sigs, const SimilarityMatrix& sims,
                          double tau) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < sigs.size(); ++i) index[sigs[i].cluster_id] = i;
  ordered_json j;
  j["tau"] = tau;
  j["clusters"] = ordered_json::array();
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const auto& c = clusters[k];
    double lowest = 1.0;
    for (const auto& a : c.members)
      for (const auto& b : c.members) lowest = std::min(lowest, sims.at(index[a], index[b]));
    ordered_json item;
    item["name"] = "cluster-" + std::to_string(k);
    item["size"] = c.members.size();
    item["reference"] = sigs[c.medoid].cluster_id;
    item["min_similarity"] = lowest;
    item["members"] = c.members;
    j["clusters"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

struct ClusterOptions {
  std::string in;
  double tau = 0.0;
  std::string prefix;
  double sweep_step = 0.0;
  unsigned threads = 0;
};

void cmd_cluster(const ClusterOptions& o, Streams io) {
  const auto sigs = load_signatures(o.in);
  if (sigs.empty()) throw ParseError(0, "", o.in + ": no signatures");
  const auto sims = SimilarityMatrix::compute(sigs, o.threads);
  const auto result = hcluster(sigs, sims, o.tau);

  ReferenceSet derived;
  for (std::size_t k = 0; k < result.clusters.size(); ++k)
    derived.add("cluster-" + std::to_string(k), result.clusters[k].reference);

  write_file(o.prefix + ".clusters.json", clusters_json(result.clusters, sigs, sims, o.tau), io);
  write_file(o.prefix + ".dendrogram.json", dendrogram_to_json(result.dendrogram, sigs), io);
  write_file(o.prefix + ".dendrogram.dot", dendrogram_to_dot(result.dendrogram, sigs), io);
  write_file(o.prefix + ".refs.json", reference_set_to_json(derived), io);

  if (o.sweep_step > 0.0) {
    std::string csv = "tau,clusters\n";
    const auto steps = static_cast<int>(std::floor(1.0 / o.sweep_step + 1e-9));
    for (int s = 0; s <= steps; ++s) {
      const double tau = std::min(1.0, s * o.sweep_step);
      csv += fixed(tau, 4) + "," +
             std::to_string(cut_dendrogram(result.dendrogram, tau).size()) + "\n";
    }
    write_file(o.prefix + ".sweep.csv", csv, io);
  }
  io.out << result.clusters.size() << " clusters at tau=" << fixed(o.tau, 4) << '\n';
}

// ---------------------------------------------------------------- eval

ordered_json pair_json(const std::optional<ExtremePair>& p) {
  if (!p) return nullptr;
  ordered_json j;
  j["similarity"] = p->similarity;
  j["attack"] = p->first;
  j["other"] = p->second;
  if (!p->other_scenario.empty()) j["other_scenario"] = p->other_scenario;
  return j;
}

ordered_json window_json(const TauWindow& w) {
  ordered_json j;
  j["size_upper_bound"] = w.size_upper_bound;
  j["attacks"] = w.attacks;
  j["min_intra"] = w.min_intra;
  j["max_inter"] = w.max_inter;
  j["width"] = w.width();
  j["midpoint"] = w.midpoint();
  j["feasible"] = w.feasible();
  return j;
}

struct EvalOptions {
  std::string in;
  std::optional<double> tau;
  std::string refs;
  std::string prefix;
  unsigned threads = 0;
};

void cmd_eval(const EvalOptions& o, Streams io) {
  const auto sigs = load_signatures(o.in);
  if (sigs.empty()) throw ParseError(0, "", o.in + ": no signatures");
  for (const auto& s : sigs)
    if (!s.label)
      throw ParseError(0, "label", "signature '" + s.cluster_id + "' is unlabeled; eval needs ground truth");

  const auto sims = SimilarityMatrix::compute(sigs, o.threads);
  ordered_json report;
  report["attacks"] = sigs.size();

  // (a) per-scenario separation
  std::string sep_csv =
      "scenario,attacks,lowest_intra,intra_attack,intra_other,highest_inter,inter_scenario,"
      "inter_attack,inter_other\n";
  report["separation"] = ordered_json::array();
  for (const auto& row : class_separation(sigs, sims)) {
    ordered_json j;
    j["scenario"] = row.scenario;
    j["attacks"] = row.attacks;
    j["lowest_intra"] = pair_json(row.lowest_intra);
    j["highest_inter"] = pair_json(row.highest_inter);
    report["separation"].push_back(std::move(j));
    const auto& lo = row.lowest_intra;
    const auto& hi = row.highest_inter;
    sep_csv += row.scenario + "," + std::to_string(row.attacks) + "," +
               (lo ? fixed(lo->similarity, 6) + "," + lo->first + "," + lo->second : ",,") + "," +
               (hi ? fixed(hi->similarity, 6) + "," + hi->other_scenario + "," + hi->first + "," +
                         hi->second
                   : ",,,") +
               "\n";
  }

  // (b) threshold window, overall and per size bound
  const auto overall = tau_window(sigs, sims);
  report["window"] = window_json(overall);
  const bool have_sizes = std::all_of(sigs.begin(), sigs.end(), [](const auto& s) { return s.hosts.has_value(); });
  std::string win_csv = "size_upper_bound,attacks,min_intra,max_inter,width,midpoint\n";
  report["windows_by_size"] = ordered_json::array();
  if (have_sizes) {
    for (const auto& w : tau_windows_by_size(sigs, sims)) {
      report["windows_by_size"].push_back(window_json(w));
      win_csv += std::to_string(w.size_upper_bound) + "," + std::to_string(w.attacks) + "," +
                 fixed(w.min_intra, 6) + "," + fixed(w.max_inter, 6) + "," + fixed(w.width(), 6) +
                 "," + fixed(w.midpoint(), 6) + "\n";
    }
  }

  const double tau = o.tau.value_or(std::clamp(overall.midpoint(), 0.0, 1.0));
  report["tau"] = tau;
  report["tau_source"] = o.tau ? "flag" : "window_midpoint";

  // (d) unsupervised recovery against ground truth, and against references
  const auto clustering = hcluster(sigs, sims, tau);
  const auto unsup = groups_from_clusters(clustering.clusters);
  const auto truth = groups_from_labels(sigs);
  report["unsupervised_clusters"] = clustering.clusters.size();
  const auto vs_truth = eval_overlap(truth, unsup);
  report["overlap_ground_truth"] = {{"equivalent", vs_truth.equivalent},
                                    {"homogeneity", vs_truth.homogeneity}};

  // (c) reference classification rates
  std::string rates_csv = "scenario,tp,fp,tn,fn,tpr,fpr,accuracy\n";
  if (!o.refs.empty()) {
    const auto refs = reference_set_from_json(read_file(o.refs));
    if (refs.empty()) throw ParseError(0, "", o.refs + ": reference set is empty");
    const auto assignments = classify(sigs, refs, tau);
    std::map<std::string, std::string> labels;
    for (const auto& s : sigs) labels[s.cluster_id] = *s.label;
    const auto rates = eval_supervised(assignments, labels);
    ordered_json sup;
    sup["per_scenario"] = ordered_json::array();
    for (const auto& r : rates.per_scenario) {
      sup["per_scenario"].push_back({{"scenario", r.scenario}, {"tp", r.tp}, {"fp", r.fp},
                                     {"tn", r.tn}, {"fn", r.fn}, {"tpr", r.tpr},
                                     {"fpr", r.fpr}, {"accuracy", r.accuracy}});
      rates_csv += r.scenario + "," + std::to_string(r.tp) + "," + std::to_string(r.fp) + "," +
                   std::to_string(r.tn) + "," + std::to_string(r.fn) + "," + fixed(r.tpr, 6) +
                   "," + fixed(r.fpr, 6) + "," + fixed(r.accuracy, 6) + "\n";
    }
    sup["macro_tpr"] = rates.macro_tpr;
    sup["macro_fpr"] = rates.macro_fpr;
    sup["macro_accuracy"] = rates.macro_accuracy;
    const auto unmatched = std::count_if(assignments.begin(), assignments.end(),
                                         [](const Assignment& a) { return !a.matched(); });
    sup["unmatched"] = unmatched;
    report["classification"] = std::move(sup);

    const auto vs_refs = eval_overlap(groups_from_assignments(assignments, refs), unsup);
    report["overlap_reference"] = {{"equivalent", vs_refs.equivalent},
                                   {"homogeneity", vs_refs.homogeneity}};
  }

  write_file(o.prefix + ".metrics.json", report.dump(2) + "\n", io);
  write_file(o.prefix + ".separation.csv", sep_csv, io);
  write_file(o.prefix + ".windows.csv", win_csv, io);
  if (!o.refs.empty()) write_file(o.prefix + ".rates.csv", rates_csv, io);
  io.out << "tau=" << fixed(tau, 4) << " window=[" << fixed(overall.max_inter, 4) << ", "
         << fixed(overall.min_intra, 4) << "] clusters=" << clustering.clusters.size() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Network-motif signatures for clustered IDS alerts", "motifsig"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic attack corpus");
  gen_cmd->add_option("--kinds", gen.kinds, "Comma list of ddos,scan,dscan,worm,expl,conv or 'all'")
      ->capture_default_str();
  gen_cmd->add_option("--psi", gen.psi, "Population N or LO:HI[:STEP] (step defaults to 100)")
      ->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Attacks per kind and population")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Corpus seed")->required();
  gen_cmd->add_option("--format", gen.format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Output file, '-' for stdout")->capture_default_str();
  gen_cmd->add_option("--alpha", gen.base.alerts_per_entity, "Mean alerts per attacker/target")
      ->capture_default_str();
  gen_cmd->add_option("--reuse", gen.base.port_reuse_prob, "Source port reuse probability")
      ->capture_default_str();
  gen_cmd->add_option("--spread", gen.base.spread_factor, "Fan-out of expl/conv trees")
      ->capture_default_str();
  gen_cmd->add_option("--theta", gen.base.attacker_target_ratio, "dscan attacker share")
      ->capture_default_str();
  gen_cmd->add_option("--mu", gen.base.worm_target_fraction, "worm target fraction")
      ->capture_default_str();

  SignOptions sign;
  auto* sign_cmd = app.add_subcommand("sign", "Compute Z-score motif signatures of alert clusters");
  sign_cmd->add_option("-i,--in", sign.in, "Alert cluster file ('-' for stdin)")->required();
  sign_cmd->add_option("--format", sign.format, "jsonl or csv (default: by file extension)")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  sign_cmd->add_option("-o,--out", sign.out, "Signature JSONL output")->capture_default_str();
  sign_cmd->add_option("--samples", sign.samples, "Random graphs per ensemble")->capture_default_str();
  sign_cmd->add_option("--seed", sign.seed, "Ensemble seed")->required();
  sign_cmd->add_option("--threads", sign.threads, "Worker threads (0 = all cores)");

  std::string sim_a, sim_b;
  auto* sim_cmd = app.add_subcommand("sim", "Similarity of the first signatures of two files");
  sim_cmd->add_option("a", sim_a, "Signature file")->required();
  sim_cmd->add_option("b", sim_b, "Signature file")->required();

  std::string refs_in, refs_out = "-", refs_name_by = "label";
  auto* refs_cmd = app.add_subcommand("refs", "Build a reference DB from signatures");
  refs_cmd->add_option("-i,--in", refs_in, "Signature JSONL")->required();
  refs_cmd->add_option("-o,--out", refs_out, "Reference DB JSON")->capture_default_str();
  refs_cmd->add_option("--name-by", refs_name_by, "Reference names from 'label' or 'cluster_id'")
      ->check(CLI::IsMember({"label", "cluster_id"}))
      ->capture_default_str();

  std::string cls_in, cls_refs, cls_out = "-";
  double cls_tau = 0.0;
  auto* cls_cmd = app.add_subcommand("classify", "Assign attacks to reference scenarios");
  cls_cmd->add_option("-i,--in", cls_in, "Signature JSONL")->required();
  cls_cmd->add_option("--refs", cls_refs, "Reference DB JSON")->required();
  cls_cmd->add_option("--tau", cls_tau, "Minimum similarity")->required()->check(CLI::Range(0.0, 1.0));
  cls_cmd->add_option("-o,--out", cls_out, "Assignment CSV")->capture_default_str();

  ClusterOptions clu;
  auto* clu_cmd = app.add_subcommand("cluster", "Complete-linkage clustering of signatures");
  clu_cmd->add_option("-i,--in", clu.in, "Signature JSONL")->required();
  clu_cmd->add_option("--tau", clu.tau, "Minimum similarity inside a cluster")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  clu_cmd->add_option("--out-prefix", clu.prefix, "Prefix for output files")->required();
  clu_cmd->add_option("--sweep-step", clu.sweep_step, "Also write cluster counts for a tau sweep")
      ->check(CLI::Range(0.0, 1.0));
  clu_cmd->add_option("--threads", clu.threads, "Worker threads (0 = all cores)");

  EvalOptions ev;
  auto* ev_cmd = app.add_subcommand("eval", "Separation, threshold window and recovery metrics");
  ev_cmd->add_option("-i,--in", ev.in, "Labeled signature JSONL")->required();
  ev_cmd->add_option("--tau", ev.tau, "Threshold (default: midpoint of the observed window)")
      ->check(CLI::Range(0.0, 1.0));
  ev_cmd->add_option("--refs", ev.refs, "Reference DB JSON for classification rates");
  ev_cmd->add_option("--out-prefix", ev.prefix, "Prefix for output files")->required();
  ev_cmd->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*gen_cmd) cmd_gen(gen, io);
    else if (*sign_cmd) cmd_sign(sign, io);
    else if (*sim_cmd) cmd_sim(sim_a, sim_b, io);
    else if (*refs_cmd) cmd_refs(refs_in, refs_out, refs_name_by, io);
    else if (*cls_cmd) cmd_classify(cls_in, cls_refs, cls_tau, cls_out, io);
    else if (*clu_cmd) cmd_cluster(clu, io);
    else if (*ev_cmd) cmd_eval(ev, io);
  } catch (const UsageError& e) {
    err << "motifsig: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "motifsig: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace motifsig::cli
