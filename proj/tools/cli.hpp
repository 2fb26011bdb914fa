#pragma once

#include <iosfwd>

namespace coevo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;  ///< bad flag, unknown key, unparseable value
inline constexpr int kExitRange = 3;   ///< parameter outside its legal range
inline constexpr int kExitIo = 4;      ///< unreadable config or unwritable output

/// Entry point of the `coevo` tool. CSV goes to `out` unless `--out` names
/// a file; diagnostics go to `err` as a single line.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coevo::cli
