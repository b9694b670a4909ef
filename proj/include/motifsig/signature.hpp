#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifsig/motif.hpp"

namespace motifsig {

/// Z-score signature of one attack as stored in signature files.
struct AttackSignature {
  std::string cluster_id;
  ZSignature signature;
  std::optional<std::string> label;   // ground-truth scenario, carried over from the alerts
  std::optional<std::uint64_t> hosts;  // host nodes in the attack's graph

  friend bool operator==(const AttackSignature&, const AttackSignature&) = default;
};

/// One JSON object, no trailing newline:
/// {"cluster_id", "z":[16], "n", "m", "samples", "seed", "motif_order"[, "label"][, "hosts"]}
std::string signature_to_json(const AttackSignature& sig);
/// Throws ParseError (with `line`) on missing fields, a z vector that is not
/// 16 finite numbers, or an unknown motif order.
AttackSignature signature_from_json(std::string_view text, std::size_t line = 0);

std::vector<AttackSignature> read_signatures(std::istream& in);
void write_signatures(std::ostream& out, std::span<const AttackSignature> sigs);

struct ReferenceEntry {
  std::string name;
  ZSignature signature;

  friend bool operator==(const ReferenceEntry&, const ReferenceEntry&) = default;
};

/// Named reference scenarios. Names are unique and all signatures share one
/// motif order.
class ReferenceSet {
 public:
  ReferenceSet() = default;

  /// Throws ParameterError on a duplicate name or a motif-order mismatch.
  void add(std::string name, ZSignature signature);

  const std::vector<ReferenceEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const ReferenceSet&, const ReferenceSet&) = default;

 private:
  std::vector<ReferenceEntry> entries_;
};

/// JSON list of {"name", "signature": {"z", "n", "m", "samples", "seed", "motif_order"}}.
std::string reference_set_to_json(const ReferenceSet& refs);
ReferenceSet reference_set_from_json(std::string_view text);

}  // namespace motifsig
