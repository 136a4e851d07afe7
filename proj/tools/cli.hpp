#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dzeros::cli {

/// Exit statuses of run().
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  /// Domain, degeneracy and resource errors.
  kDomain = 2,
  kPrecision = 3,
  kInternal = 4,
};

/// Runs one subcommand; args excludes the program name. The JSON summary
/// goes to out, diagnostics to err, per-row data to the --out CSV.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace dzeros::cli
