#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coevo/model.hpp"
#include "coevo/sweep.hpp"

namespace coevo {

/// Ordered key/value entries, as read from a config file or the command line.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Every key accepted in a config file; each has a `--key` flag of the same name.
const std::vector<std::string_view>& config_keys();

/// Parses `key=value` lines. Blank lines and `#` comments are skipped,
/// whitespace around keys and values is trimmed. Unknown keys, lines without
/// `=` and repeated keys (other than `sweep`) throw ConfigError.
ConfigEntries parse_config(std::string_view text);

/// Reads and parses a config file; an unreadable file throws IoError.
ConfigEntries read_config_file(const std::string& path);

/// Fully resolved command settings.
struct Settings {
  SimParams params;
  std::uint32_t replicas = 5;
  std::vector<SweepAxis> axes;
  std::size_t threads = 0;
  std::optional<std::string> out;

  SweepSpec sweep_spec() const { return {params, axes, replicas}; }
};

/// Applies file entries, then flag entries (flags win; any `sweep` flag
/// replaces the file's axes), then validates. Unparseable values throw
/// ConfigError, out-of-range values RangeError.
Settings resolve_settings(const ConfigEntries& file, const ConfigEntries& flags);

/// `key=value` pairs echoing every model parameter, in config-key spelling.
/// Reals use the shortest round-trip representation.
ConfigEntries describe_params(const SimParams& params);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_exact(double value);

}  // namespace coevo
