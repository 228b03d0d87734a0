#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualmeet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitManifestFailure = 2;

// Runs the command line `args` (args[0] is the program name). Documents go to
// `out` unless --out names a file; diagnostics are a single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualmeet
