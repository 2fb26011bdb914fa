#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coevo/model.hpp"

namespace coevo {

enum class SweepParam { B, M, P, Gamma };

std::string_view sweep_param_name(SweepParam param);

/// Inclusive linear grid over one model parameter.
struct SweepAxis {
  SweepParam param = SweepParam::B;
  double start = 0.0;
  double stop = 0.0;
  std::uint32_t points = 1;

  std::vector<double> values() const;
  /// `param:start:stop:points`, e.g. `b:1:2:11`.
  std::string to_string() const;

  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

/// Parses `param:start:stop:points`. Syntax problems throw ConfigError;
/// points == 0 throws RangeError.
SweepAxis parse_sweep_axis(std::string_view text);

void set_param(SimParams& params, SweepParam param, double value);

struct SweepSpec {
  SimParams base;
  std::vector<SweepAxis> axes;  ///< at most two; the first varies slowest
  std::uint32_t replicas = 5;

  /// Checks axis count and distinctness and that every grid point is a
  /// valid SimParams. Throws RangeError.
  void validate() const;

  /// One SimParams per grid point in lexicographic order. Each point's seed
  /// is derived from the base seed and its grid coordinates.
  std::vector<SimParams> grid_points() const;
};

/// Aggregate over replicas of one grid point.
struct SweepRow {
  SimParams params;  ///< point parameters; seed is the point seed
  std::uint32_t replicas = 0;
  double f_c_mean = 0.0;
  double f_c_std = 0.0;  ///< sample standard deviation, 0 for one replica
  double A_mean = 0.0;
  double A_std = 0.0;
};

/// Runs every (point, replica) job on a worker pool. Replica r of a point
/// uses replica_seed(point seed, r). Rows come back in grid order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t workers = 0);

}  // namespace coevo
