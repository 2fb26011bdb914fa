#include "coevo/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace coevo {

namespace {

void write_metadata(std::ostream& os, const char* command, const ConfigEntries& entries) {
  os << "# command=" << command << '\n';
  for (const auto& [key, value] : entries) os << "# " << key << '=' << value << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    out.push_back(line.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_run_csv(std::ostream& os, const RunResult& result) {
  write_metadata(os, "run", describe_params(result.params));
  os << kRunHeader << '\n';
  for (const auto& rec : result.series) {
    os << rec.t << ',' << format_number(rec.f_c) << ',' << format_number(rec.mean_A) << '\n';
  }
}

void write_dist_csv(std::ostream& os, const RunResult& result) {
  auto meta = describe_params(result.params);
  meta.emplace_back("f_c_stationary", format_exact(result.f_c_stationary));
  meta.emplace_back("A_stationary", format_exact(result.A_stationary));
  write_metadata(os, "dist", meta);
  os << kDistHeader << '\n';
  for (std::size_t i = 0; i < result.A_initial.size(); ++i) {
    os << i << ',' << format_number(result.A_initial[i]) << ',' << format_number(result.A_final[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  auto meta = describe_params(spec.base);
  meta.emplace_back("replicas", std::to_string(spec.replicas));
  for (const auto& axis : spec.axes) meta.emplace_back("sweep", axis.to_string());
  write_metadata(os, "sweep", meta);
  os << kSweepHeader << '\n';
  for (const auto& row : rows) {
    const auto& p = row.params;
    os << topology_name(p.topology.kind) << ',' << p.topology.node_count << ',' << format_number(p.b) << ','
       << format_number(p.m) << ',' << format_number(p.p) << ',' << format_number(p.gamma) << ','
       << format_number(p.delta) << ',' << format_number(p.kappa) << ',' << p.mc_steps << ','
       << p.measure_window << ',' << row.replicas << ',' << p.seed << ',' << format_number(row.f_c_mean) << ','
       << format_number(row.f_c_std) << ',' << format_number(row.A_mean) << ',' << format_number(row.A_std)
       << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

const std::string& CsvTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  throw std::out_of_range("no metadata key '" + key + "'");
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto start = line.find_first_not_of("# ");
      if (start == std::string::npos) continue;
      const auto body = line.substr(start);
      const auto eq = body.find('=');
      if (eq != std::string::npos) table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    auto fields = split(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("row " + std::to_string(table.rows.size() + 1) + " has " +
                               std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw std::runtime_error("csv has no header line");
  return table;
}

}  // namespace coevo
