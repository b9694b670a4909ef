#include "motifsig/signature.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

using nlohmann::ordered_json;

ordered_json body_json(const ZSignature& sig) {
  ordered_json j;
  j["z"] = sig.z;
  j["n"] = sig.node_count;
  j["m"] = sig.edge_count;
  j["samples"] = sig.samples;
  j["seed"] = sig.seed;
  j["motif_order"] = sig.motif_order;
  return j;
}

const ordered_json& require(const ordered_json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, key, "missing");
  return *it;
}

std::uint64_t require_count(const ordered_json& obj, const char* key, std::size_t line) {
  const auto& v = require(obj, key, line);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(line, key, "not a non-negative integer");
  return v.get<std::uint64_t>();
}

ZSignature body_from_json(const ordered_json& obj, std::size_t line) {
  if (!obj.is_object()) throw ParseError(line, "", "signature is not a JSON object");
  ZSignature sig;
  const auto& z = require(obj, "z", line);
  if (!z.is_array() || z.size() != kMotifCount)
    throw ParseError(line, "z", "expected an array of " + std::to_string(kMotifCount) + " numbers");
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    if (!z[i].is_number()) throw ParseError(line, "z", "entry " + std::to_string(i) + " not a number");
    sig.z[i] = z[i].get<double>();
    if (!std::isfinite(sig.z[i])) throw ParseError(line, "z", "non-finite entry");
  }
  sig.node_count = require_count(obj, "n", line);
  sig.edge_count = require_count(obj, "m", line);
  sig.samples = require_count(obj, "samples", line);
  sig.seed = require_count(obj, "seed", line);
  const auto& order = require(obj, "motif_order", line);
  if (!order.is_string()) throw ParseError(line, "motif_order", "not a string");
  sig.motif_order = order.get<std::string>();
  if (sig.motif_order != kMotifOrder)
    throw ParseError(line, "motif_order", "unsupported motif order '" + sig.motif_order + "'");
  return sig;
}

ordered_json parse_json(std::string_view text, std::size_t line) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(line, "", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string signature_to_json(const AttackSignature& sig) {
  ordered_json j;
  j["cluster_id"] = sig.cluster_id;
  const auto body = body_json(sig.signature);
  for (const auto& [key, value] : body.items()) j[key] = value;
  if (sig.label) j["label"] = *sig.label;
  if (sig.hosts) j["hosts"] = *sig.hosts;
  return j.dump();
}

AttackSignature signature_from_json(std::string_view text, std::size_t line) {
  const auto obj = parse_json(text, line);
  if (!obj.is_object()) throw ParseError(line, "", "signature is not a JSON object");
  AttackSignature sig;
  const auto& id = require(obj, "cluster_id", line);
  if (!id.is_string()) throw ParseError(line, "cluster_id", "not a string");
  sig.cluster_id = id.get<std::string>();
  sig.signature = body_from_json(obj, line);
  if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(line, "label", "not a string");
    sig.label = it->get<std::string>();
  }
  if (obj.contains("hosts")) sig.hosts = require_count(obj, "hosts", line);
  return sig;
}

std::vector<AttackSignature> read_signatures(std::istream& in) {
  std::vector<AttackSignature> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    result.push_back(signature_from_json(line, line_no));
  }
  return result;
}

void write_signatures(std::ostream& out, std::span<const AttackSignature> sigs) {
  for (const auto& sig : sigs) out << signature_to_json(sig) << '\n';
}

void ReferenceSet::add(std::string name, ZSignature signature) {
  for (const auto& e : entries_) {
    if (e.name == name) throw ParameterError("duplicate reference name '" + name + "'");
    if (e.signature.motif_order != signature.motif_order)
      throw ParameterError("reference '" + name + "' uses motif order '" + signature.motif_order +
                           "', expected '" + e.signature.motif_order + "'");
  }
  entries_.push_back({std::move(name), std::move(signature)});
}

std::string reference_set_to_json(const ReferenceSet& refs) {
  ordered_json list = ordered_json::array();
  for (const auto& e : refs.entries()) {
    ordered_json item;
    item["name"] = e.name;
    item["signature"] = body_json(e.signature);
    list.push_back(std::move(item));
  }
  return list.dump(2) + "\n";
}

ReferenceSet reference_set_from_json(std::string_view text) {
  const auto list = parse_json(text, 0);
  if (!list.is_array()) throw ParseError(0, "", "reference file must hold a JSON list");
  ReferenceSet refs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& item = list[i];
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string())
      throw ParseError(0, "name", "entry " + std::to_string(i) + " lacks a string name");
    try {
      refs.add(item["name"].get<std::string>(), body_from_json(require(item, "signature", 0), 0));
    } catch (const ParameterError& e) {
      throw ParseError(0, "name", e.what());
    }
  }
  return refs;
}

}  // namespace motifsig
