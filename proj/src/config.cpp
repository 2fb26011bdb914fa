#include "coevo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "coevo/errors.hpp"

namespace coevo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double to_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ptr != end) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  if (ec == std::errc::result_out_of_range) throw RangeError(key + ": value '" + value + "' is too large");
  if (ec != std::errc{}) throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  return out;
}

std::uint32_t to_u32(const std::string& key, const std::string& value) {
  const std::uint64_t v = to_unsigned(key, value);
  if (v > 0xffffffffULL) throw RangeError(key + ": value '" + value + "' is too large");
  return static_cast<std::uint32_t>(v);
}

InitialStrategies to_init(const std::string& value) {
  if (value == "random") return InitialStrategies::Random;
  if (value == "all-c") return InitialStrategies::AllCooperate;
  if (value == "all-d") return InitialStrategies::AllDefect;
  throw ConfigError("init: expected random, all-c or all-d, got '" + value + "'");
}

std::string_view init_name(InitialStrategies init) {
  switch (init) {
    case InitialStrategies::Random: return "random";
    case InitialStrategies::AllCooperate: return "all-c";
    case InitialStrategies::AllDefect: return "all-d";
  }
  return "?";
}

void apply(Settings& s, const std::string& key, const std::string& value) {
  auto& p = s.params;
  if (key == "topology") {
    try {
      p.topology.kind = parse_topology(value);
    } catch (const RangeError& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "n") p.topology.node_count = to_unsigned(key, value);
  else if (key == "ws-k") p.topology.ws_degree = to_unsigned(key, value);
  else if (key == "ws-beta") p.topology.ws_rewire_prob = to_real(key, value);
  else if (key == "b") p.b = to_real(key, value);
  else if (key == "m") p.m = to_real(key, value);
  else if (key == "p") p.p = to_real(key, value);
  else if (key == "gamma") p.gamma = to_real(key, value);
  else if (key == "delta") p.delta = to_real(key, value);
  else if (key == "kappa") p.kappa = to_real(key, value);
  else if (key == "steps") p.mc_steps = to_u32(key, value);
  else if (key == "window") p.measure_window = to_u32(key, value);
  else if (key == "seed") p.seed = to_unsigned(key, value);
  else if (key == "init") p.init = to_init(value);
  else if (key == "replicas") s.replicas = to_u32(key, value);
  else if (key == "threads") s.threads = to_unsigned(key, value);
  else if (key == "out") s.out = value;
  else if (key == "sweep") s.axes.push_back(parse_sweep_axis(value));
  else throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "topology", "n",     "b",    "m",     "p",        "gamma",   "delta",   "kappa", "steps",
      "window",   "seed",  "init", "ws-k",  "ws-beta",  "replicas", "threads", "out",   "sweep",
  };
  return keys;
}

ConfigEntries parse_config(std::string_view text) {
  ConfigEntries out;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto nl = text.find('\n', begin);
    const auto raw = text.substr(begin, nl == std::string_view::npos ? std::string_view::npos : nl - begin);
    begin = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" + std::string(line) + "'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (key != "sweep" && std::any_of(out.begin(), out.end(), [&](const auto& kv) { return kv.first == key; })) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' given twice");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

ConfigEntries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Settings resolve_settings(const ConfigEntries& file, const ConfigEntries& flags) {
  Settings s;
  const bool flags_sweep =
      std::any_of(flags.begin(), flags.end(), [](const auto& kv) { return kv.first == "sweep"; });
  for (const auto& [key, value] : file) {
    if (key == "sweep" && flags_sweep) continue;
    apply(s, key, value);
  }
  for (const auto& [key, value] : flags) {
    if (!known_key(key)) throw ConfigError("unknown key '" + key + "'");
    apply(s, key, value);
  }
  s.sweep_spec().validate();
  return s;
}

std::string format_exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

ConfigEntries describe_params(const SimParams& params) {
  const auto& t = params.topology;
  return {
      {"topology", std::string(topology_name(t.kind))},
      {"n", std::to_string(t.node_count)},
      {"ws-k", std::to_string(t.ws_degree)},
      {"ws-beta", format_exact(t.ws_rewire_prob)},
      {"b", format_exact(params.b)},
      {"m", format_exact(params.m)},
      {"p", format_exact(params.p)},
      {"gamma", format_exact(params.gamma)},
      {"delta", format_exact(params.delta)},
      {"kappa", format_exact(params.kappa)},
      {"steps", std::to_string(params.mc_steps)},
      {"window", std::to_string(params.measure_window)},
      {"seed", std::to_string(params.seed)},
      {"init", std::string(init_name(params.init))},
  };
}

}  // namespace coevo
