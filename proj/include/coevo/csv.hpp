#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coevo/config.hpp"
#include "coevo/engine.hpp"
#include "coevo/sweep.hpp"

namespace coevo {

/// Six significant digits, as used in every CSV body.
std::string format_number(double value);

/// `t,f_c,mean_A`, one row per recorded step.
void write_run_csv(std::ostream& os, const RunResult& result);

/// `node_id,A_initial,A_final`, one row per node.
void write_dist_csv(std::ostream& os, const RunResult& result);

/// One SweepRow per line, in grid order.
void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

inline constexpr const char* kRunHeader = "t,f_c,mean_A";
inline constexpr const char* kDistHeader = "node_id,A_initial,A_final";
inline constexpr const char* kSweepHeader =
    "topology,N,b,m,p,gamma,delta,kappa,mc_steps,measure_window,replicas,seed,f_c_mean,f_c_std,A_mean,A_std";

/// A CSV file as written above: `# key=value` metadata, a header, rows.
struct CsvTable {
  ConfigEntries metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  /// First metadata value for key; throws std::out_of_range if absent.
  const std::string& meta(const std::string& key) const;
};

/// Throws std::runtime_error on ragged rows or a missing header.
CsvTable read_csv(std::istream& is);

}  // namespace coevo
