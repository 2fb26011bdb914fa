#include "coevo/sweep.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "coevo/engine.hpp"
#include "coevo/errors.hpp"

namespace coevo {

std::string_view sweep_param_name(SweepParam param) {
  switch (param) {
    case SweepParam::B: return "b";
    case SweepParam::M: return "m";
    case SweepParam::P: return "p";
    case SweepParam::Gamma: return "gamma";
  }
  return "?";
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double span = stop - start;
  const double denom = static_cast<double>(points - 1);
  for (std::uint32_t k = 0; k < points; ++k) out[k] = start + span * static_cast<double>(k) / denom;
  out.back() = stop;
  return out;
}

std::string SweepAxis::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s:%.17g:%.17g:%u", std::string(sweep_param_name(param)).c_str(), start, stop,
                points);
  return buf;
}

namespace {

double parse_field(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError("bad number '" + std::string(text) + "' in sweep '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

SweepAxis parse_sweep_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon == std::string_view::npos ? std::string_view::npos : colon - begin));
    if (colon == std::string_view::npos) break;
    begin = colon + 1;
  }
  if (parts.size() != 4) {
    throw ConfigError("sweep must look like param:start:stop:points (got '" + std::string(text) + "')");
  }

  SweepAxis axis;
  if (parts[0] == "b") axis.param = SweepParam::B;
  else if (parts[0] == "m") axis.param = SweepParam::M;
  else if (parts[0] == "p") axis.param = SweepParam::P;
  else if (parts[0] == "gamma") axis.param = SweepParam::Gamma;
  else throw ConfigError("sweep parameter must be one of b, m, p, gamma (got '" + std::string(parts[0]) + "')");

  axis.start = parse_field(parts[1], text);
  axis.stop = parse_field(parts[2], text);
  const double points = parse_field(parts[3], text);
  if (points != std::floor(points) || points < 0 || points > 1e6) {
    throw ConfigError("sweep point count must be a whole number (got '" + std::string(parts[3]) + "')");
  }
  if (points < 1) throw RangeError("sweep point count must be >= 1");
  axis.points = static_cast<std::uint32_t>(points);
  return axis;
}

void set_param(SimParams& params, SweepParam param, double value) {
  switch (param) {
    case SweepParam::B: params.b = value; break;
    case SweepParam::M: params.m = value; break;
    case SweepParam::P: params.p = value; break;
    case SweepParam::Gamma: params.gamma = value; break;
  }
}

void SweepSpec::validate() const {
  if (axes.size() > 2) throw RangeError("at most two sweep axes are allowed");
  if (axes.size() == 2 && axes[0].param == axes[1].param) {
    throw RangeError("sweep axes must name different parameters");
  }
  if (replicas == 0) throw RangeError("replicas must be >= 1");
  for (const auto& axis : axes) {
    if (axis.points == 0) throw RangeError("sweep point count must be >= 1");
  }
  base.validate();
  for (const auto& point : grid_points()) point.validate();
}

std::vector<SimParams> SweepSpec::grid_points() const {
  const std::vector<double> slow = axes.empty() ? std::vector<double>{0.0} : axes[0].values();
  const std::vector<double> fast = axes.size() < 2 ? std::vector<double>{0.0} : axes[1].values();
  std::vector<SimParams> out;
  out.reserve(slow.size() * fast.size());
  for (std::size_t i = 0; i < slow.size(); ++i) {
    for (std::size_t j = 0; j < fast.size(); ++j) {
      SimParams point = base;
      if (!axes.empty()) set_param(point, axes[0].param, slow[i]);
      if (axes.size() > 1) set_param(point, axes[1].param, fast[j]);
      point.seed = derive_seed(base.seed, {0x73776570ULL, i, j});  // "swep"
      out.push_back(point);
    }
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::size_t workers) {
  spec.validate();
  const auto points = spec.grid_points();
  const std::size_t reps = spec.replicas;

  std::vector<std::pair<double, double>> stationary(points.size() * reps);
  parallel_for(stationary.size(), workers, [&](std::size_t job) {
    SimParams params = points[job / reps];
    params.seed = replica_seed(params.seed, job % reps);
    const RunResult result = run(params);
    stationary[job] = {result.f_c_stationary, result.A_stationary};
  });

  const auto mean_std = [reps](auto&& get, const std::pair<double, double>* first) {
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) mean += get(first[r]);
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) ss += (get(first[r]) - mean) * (get(first[r]) - mean);
    const double sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
    return std::pair{mean, sd};
  };

  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto* first = stationary.data() + k * reps;
    SweepRow row;
    row.params = points[k];
    row.replicas = spec.replicas;
    std::tie(row.f_c_mean, row.f_c_std) = mean_std([](const auto& s) { return s.first; }, first);
    std::tie(row.A_mean, row.A_std) = mean_std([](const auto& s) { return s.second; }, first);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coevo
