#include "motifsig/alert.hpp"

#include <charconv>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "csv.hpp"
#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

using nlohmann::json;

constexpr std::string_view kRequiredColumns[] = {"cluster_id", "src_ip", "src_port", "dst_ip",
                                                 "dst_port"};

bool is_core_field(std::string_view key) {
  for (auto c : kRequiredColumns)
    if (c == key) return true;
  return key == "label";
}

std::uint16_t parse_port(std::string_view text, std::size_t line, const std::string& field) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError(line, field, "not an integer: '" + std::string(text) + "'");
  if (value < 0 || value > 65535)
    throw ParseError(line, field, "port out of range [0, 65535]: " + std::to_string(value));
  return static_cast<std::uint16_t>(value);
}

std::uint16_t json_port(const json& obj, const std::string& key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, key, "missing");
  if (!it->is_number_integer()) throw ParseError(line, key, "not an integer");
  const auto value = it->get<long long>();
  if (value < 0 || value > 65535)
    throw ParseError(line, key, "port out of range [0, 65535]: " + std::to_string(value));
  return static_cast<std::uint16_t>(value);
}

std::string json_token(const json& obj, const std::string& key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, key, "missing");
  if (!it->is_string()) throw ParseError(line, key, "not a string");
  auto value = it->get<std::string>();
  if (value.empty()) throw ParseError(line, key, "empty");
  return value;
}

/// Collects records into clusters keyed by id, preserving first-seen order.
class Grouper {
 public:
  void add(std::string cluster_id, Alert alert, std::optional<std::string> label, std::size_t line) {
    auto [it, inserted] = index_.try_emplace(cluster_id, clusters_.size());
    if (inserted) {
      clusters_.push_back(AlertCluster{std::move(cluster_id), {}, std::nullopt});
    }
    auto& cluster = clusters_[it->second];
    if (label) {
      if (cluster.label && *cluster.label != *label)
        throw ParseError(line, "label",
                         "conflicting labels '" + *cluster.label + "' and '" + *label +
                             "' in cluster '" + cluster.cluster_id + "'");
      cluster.label = std::move(label);
    }
    cluster.alerts.push_back(std::move(alert));
  }

  std::vector<AlertCluster> take() { return std::move(clusters_); }

 private:
  std::vector<AlertCluster> clusters_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::vector<AlertCluster> parse_jsonl(std::istream& in) {
  Grouper grouper;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, "", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "", "record is not a JSON object");

    Alert alert;
    std::string cluster_id = json_token(obj, "cluster_id", line_no);
    alert.src_ip = json_token(obj, "src_ip", line_no);
    alert.src_port = json_port(obj, "src_port", line_no);
    alert.dst_ip = json_token(obj, "dst_ip", line_no);
    alert.dst_port = json_port(obj, "dst_port", line_no);

    std::optional<std::string> label;
    if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError(line_no, "label", "not a string");
      if (!it->get_ref<const std::string&>().empty()) label = it->get<std::string>();
    }
    for (auto& [key, value] : obj.items()) {
      if (is_core_field(key)) continue;
      alert.attributes.emplace(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    grouper.add(std::move(cluster_id), std::move(alert), std::move(label), line_no);
  }
  return grouper.take();
}

std::vector<AlertCluster> parse_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) return {};

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!column.emplace(header[i], i).second)
      throw ParseError(reader.line(), header[i], "duplicate column");
  }
  for (auto required : kRequiredColumns) {
    if (!column.contains(std::string(required)))
      throw ParseError(reader.line(), std::string(required), "missing header column");
  }
  const auto col = [&](std::string_view name) { return column.at(std::string(name)); };
  const std::size_t c_id = col("cluster_id"), c_sip = col("src_ip"), c_sport = col("src_port"),
                    c_dip = col("dst_ip"), c_dport = col("dst_port");
  const auto label_it = column.find("label");

  Grouper grouper;
  std::vector<std::string> row;
  while (reader.next(row)) {
    const std::size_t line = reader.line();
    if (row.size() != header.size())
      throw ParseError(line, "", "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(row.size()));
    const auto token = [&](std::size_t idx) {
      if (row[idx].empty()) throw ParseError(line, header[idx], "empty");
      return row[idx];
    };
    Alert alert;
    std::string cluster_id = token(c_id);
    alert.src_ip = token(c_sip);
    alert.src_port = parse_port(row[c_sport], line, header[c_sport]);
    alert.dst_ip = token(c_dip);
    alert.dst_port = parse_port(row[c_dport], line, header[c_dport]);

    std::optional<std::string> label;
    if (label_it != column.end() && !row[label_it->second].empty())
      label = row[label_it->second];
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (is_core_field(header[i]) || row[i].empty()) continue;
      alert.attributes.emplace(header[i], row[i]);
    }
    grouper.add(std::move(cluster_id), std::move(alert), std::move(label), line);
  }
  return grouper.take();
}

void write_jsonl(std::string& out, const std::vector<AlertCluster>& clusters, bool with_extras) {
  for (const auto& cluster : clusters) {
    for (const auto& alert : cluster.alerts) {
      // Emitted by hand so key order stays fixed (cluster_id first).
      out += "{\"cluster_id\":" + json(cluster.cluster_id).dump();
      out += ",\"src_ip\":" + json(alert.src_ip).dump();
      out += ",\"src_port\":" + std::to_string(alert.src_port);
      out += ",\"dst_ip\":" + json(alert.dst_ip).dump();
      out += ",\"dst_port\":" + std::to_string(alert.dst_port);
      if (with_extras) {
        if (cluster.label) out += ",\"label\":" + json(*cluster.label).dump();
        for (const auto& [key, value] : alert.attributes)
          out += "," + json(key).dump() + ":" + json(value).dump();
      }
      out += "}\n";
    }
  }
}

void write_csv(std::string& out, const std::vector<AlertCluster>& clusters, bool with_extras) {
  bool any_label = false;
  std::set<std::string> extra_keys;
  if (with_extras) {
    for (const auto& cluster : clusters) {
      any_label = any_label || cluster.label.has_value();
      for (const auto& alert : cluster.alerts)
        for (const auto& [key, value] : alert.attributes) extra_keys.insert(key);
    }
  }

  std::vector<std::string> header(std::begin(kRequiredColumns), std::end(kRequiredColumns));
  if (any_label) header.emplace_back("label");
  header.insert(header.end(), extra_keys.begin(), extra_keys.end());
  csv::write_record(out, header);

  std::vector<std::string> row;
  for (const auto& cluster : clusters) {
    for (const auto& alert : cluster.alerts) {
      row.assign({cluster.cluster_id, alert.src_ip, std::to_string(alert.src_port), alert.dst_ip,
                  std::to_string(alert.dst_port)});
      if (any_label) row.push_back(cluster.label.value_or(""));
      for (const auto& key : extra_keys) {
        auto it = alert.attributes.find(key);
        row.push_back(it == alert.attributes.end() ? "" : it->second);
      }
      csv::write_record(out, row);
    }
  }
}

std::string render(const std::vector<AlertCluster>& clusters, ClusterFormat format,
                   bool with_extras) {
  std::string out;
  if (format == ClusterFormat::jsonl)
    write_jsonl(out, clusters, with_extras);
  else
    write_csv(out, clusters, with_extras);
  return out;
}

}  // namespace

ClusterFormat parse_format(std::string_view name) {
  if (name == "jsonl") return ClusterFormat::jsonl;
  if (name == "csv") return ClusterFormat::csv;
  throw ParameterError("unknown alert format '" + std::string(name) + "' (expected jsonl or csv)");
}

std::string_view format_name(ClusterFormat format) {
  return format == ClusterFormat::jsonl ? "jsonl" : "csv";
}

std::vector<AlertCluster> parse_clusters(std::istream& in, ClusterFormat format) {
  return format == ClusterFormat::jsonl ? parse_jsonl(in) : parse_csv(in);
}

std::vector<AlertCluster> parse_clusters(std::string_view text, ClusterFormat format) {
  std::istringstream in{std::string(text)};
  return parse_clusters(in, format);
}

void serialize_clusters(std::ostream& out, const std::vector<AlertCluster>& clusters,
                        ClusterFormat format) {
  out << render(clusters, format, true);
}

std::string serialize_clusters(const std::vector<AlertCluster>& clusters, ClusterFormat format) {
  return render(clusters, format, true);
}

std::size_t measure_bytes(const std::vector<AlertCluster>& clusters, MeasureMode mode,
                          ClusterFormat format) {
  return render(clusters, format, mode == MeasureMode::full).size();
}

}  // namespace motifsig
