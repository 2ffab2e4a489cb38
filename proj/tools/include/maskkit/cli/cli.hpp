#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maskkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Text output goes to
/// `out` unless a command is given -o; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tool version recorded in manifests.
const char* version() noexcept;

}  // namespace maskkit::cli
