#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ultrametric::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 a verification gate failed, 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Digits from ULTRAMETRIC_PRECISION, or 60 if unset.
int default_precision();

}  // namespace ultrametric::cli
