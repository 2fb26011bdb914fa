#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coevo/config.hpp"
#include "coevo/csv.hpp"
#include "coevo/engine.hpp"
#include "coevo/errors.hpp"
#include "coevo/sweep.hpp"

namespace coevo::cli {

namespace {

struct FlagValues {
  std::map<std::string, std::string> scalars;
  std::vector<std::string> sweeps;
  std::string config_path;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* sweep_option = nullptr;
};

void add_model_flags(CLI::App& cmd, FlagValues& flags, bool with_sweep) {
  const std::vector<std::pair<std::string, std::string>> described{
      {"topology", "relationship layer: hl, sl, xl or ws"},
      {"n", "node count (perfect square for lattices)"},
      {"b", "temptation to defect, [1,2]"},
      {"m", "payoff weight in fitness, [0,1]"},
      {"p", "interaction probability above threshold, [0,1]"},
      {"gamma", "relationship threshold, [0,1]"},
      {"delta", "relationship weight step, [0,1]"},
      {"kappa", "selection noise, > 0"},
      {"steps", "Monte Carlo steps"},
      {"window", "trailing steps averaged for stationary values"},
      {"seed", "master seed"},
      {"init", "initial strategies: random, all-c or all-d"},
      {"ws-k", "Watts-Strogatz degree"},
      {"ws-beta", "Watts-Strogatz rewiring probability"},
      {"replicas", "independent runs per sweep point"},
      {"threads", "worker threads (0 = all cores)"},
      {"out", "output path (default stdout)"},
  };
  for (const auto& [key, help] : described) {
    flags.options[key] = cmd.add_option("--" + key, flags.scalars[key], help);
  }
  cmd.add_option("--config", flags.config_path, "key=value config file; flags override it");
  if (with_sweep) {
    flags.sweep_option =
        cmd.add_option("--sweep", flags.sweeps, "param:start:stop:points over b, m, p or gamma (at most twice)")
            ->allow_extra_args(false)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  }
}

ConfigEntries collect_flags(const FlagValues& flags) {
  ConfigEntries entries;
  for (const auto& [key, option] : flags.options) {
    if (option->count() > 0) entries.emplace_back(key, flags.scalars.at(key));
  }
  for (const auto& s : flags.sweeps) entries.emplace_back("sweep", s);
  return entries;
}

void emit(const Settings& settings, const std::string& body, std::ostream& out) {
  if (!settings.out) {
    out << body;
    return;
  }
  std::ofstream file(*settings.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *settings.out + "' for writing");
  file << body;
  file.flush();
  if (!file) throw IoError("failed writing '" + *settings.out + "'");
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coevolutionary weak prisoner's dilemma on a weighted relationship layer"};
  app.name("coevo");
  app.require_subcommand(1);

  FlagValues run_flags, sweep_flags, dist_flags, graph_flags;
  auto* run_cmd = app.add_subcommand("run", "single run; CSV of t,f_c,mean_A per step");
  add_model_flags(*run_cmd, run_flags, false);
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep over up to two of b, m, p, gamma");
  add_model_flags(*sweep_cmd, sweep_flags, true);
  auto* dist_cmd = app.add_subcommand("dist", "per-node relationship index at t=0 and at the end");
  add_model_flags(*dist_cmd, dist_flags, false);
  auto* graph_cmd = app.add_subcommand("graph", "edge list of the relationship layer, one 'i j' per line");
  add_model_flags(*graph_cmd, graph_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "coevo: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const FlagValues& flags = run_cmd->parsed()     ? run_flags
                              : sweep_cmd->parsed() ? sweep_flags
                              : dist_cmd->parsed()  ? dist_flags
                                                    : graph_flags;
    const ConfigEntries file = flags.config_path.empty() ? ConfigEntries{} : read_config_file(flags.config_path);
    const Settings settings = resolve_settings(file, collect_flags(flags));
    if (!sweep_cmd->parsed() && !settings.axes.empty()) {
      throw ConfigError("sweep axes are only accepted by the sweep command");
    }

    std::ostringstream body;
    if (run_cmd->parsed()) {
      write_run_csv(body, run(settings.params));
    } else if (dist_cmd->parsed()) {
      write_dist_csv(body, run(settings.params));
    } else if (sweep_cmd->parsed()) {
      const SweepSpec spec = settings.sweep_spec();
      write_sweep_csv(body, spec, run_sweep(spec, settings.threads));
    } else {
      Rng rng(derive_seed(settings.params.seed, Stream::Topology));
      build_topology(settings.params.topology, rng).write_edge_list(body);
    }
    emit(settings, body.str(), out);
  } catch (const ConfigError& e) {
    err << "coevo: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RangeError& e) {
    err << "coevo: out of range: " << e.what() << '\n';
    return kExitRange;
  } catch (const IoError& e) {
    err << "coevo: i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace coevo::cli
