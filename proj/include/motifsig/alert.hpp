#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motifsig {

/// One IDS alert reduced to source and destination endpoints. IPs are kept
/// as opaque tokens so hashed or anonymized addresses pass through unchanged.
/// `attributes` holds any further fields the input carried (severity,
/// signature id, timestamps...). They play no role in graph construction
/// but count towards full-size byte measurements.
struct Alert {
  std::string src_ip;
  std::uint16_t src_port = 0;
  std::string dst_ip;
  std::uint16_t dst_port = 0;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const Alert&, const Alert&) = default;
};

/// All alerts attributed to one attack by an upstream clustering step.
struct AlertCluster {
  std::string cluster_id;
  std::vector<Alert> alerts;
  std::optional<std::string> label;  // ground-truth scenario, when known

  friend bool operator==(const AlertCluster&, const AlertCluster&) = default;
};

enum class ClusterFormat { jsonl, csv };

/// Accepts "jsonl" / "csv" (case-sensitive). Throws ParameterError otherwise.
ClusterFormat parse_format(std::string_view name);
std::string_view format_name(ClusterFormat format);

/// Reads alert records and groups them by cluster_id. Clusters appear in
/// order of first occurrence; alerts keep input order inside a cluster, and
/// records of one cluster_id spread over the file are merged.
///
/// JSONL: one object per line with keys cluster_id, src_ip, src_port, dst_ip,
/// dst_port and optionally label; other keys become attributes.
/// CSV: RFC-4180 with a header naming at least the five required columns;
/// optional label column; other columns become attributes.
///
/// Throws ParseError naming the line and field of the first bad record.
std::vector<AlertCluster> parse_clusters(std::istream& in, ClusterFormat format);
std::vector<AlertCluster> parse_clusters(std::string_view text, ClusterFormat format);

/// Inverse of parse_clusters. CSV output always carries a header line, so an
/// empty list serializes to the header alone; JSONL of an empty list is empty.
void serialize_clusters(std::ostream& out, const std::vector<AlertCluster>& clusters,
                        ClusterFormat format);
std::string serialize_clusters(const std::vector<AlertCluster>& clusters, ClusterFormat format);

enum class MeasureMode {
  full,          // everything the records carry
  ip_port_only,  // cluster_id plus the four endpoint fields
};

/// Byte size of the serialized clusters in `format`. For CSV the header line
/// is included, so the empty list measures as the header length; for JSONL
/// the empty list measures 0.
std::size_t measure_bytes(const std::vector<AlertCluster>& clusters, MeasureMode mode,
                          ClusterFormat format = ClusterFormat::jsonl);

}  // namespace motifsig
