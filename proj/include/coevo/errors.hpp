#pragma once

#include <stdexcept>
#include <string>

namespace coevo {

/// Malformed configuration: unknown key, bad syntax, unparseable number.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter outside its legal range.
class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coevo
