#pragma once

#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "ultrametric/radial.hpp"
#include "ultrametric/verification.hpp"

namespace ultrametric {

/// Function spec JSON:
///   {"prime": 2, "dim": 1, "inner_exp": 0, "inner_value": "1",
///    "rings": [{"k": 1, "value": "-1/2"}]}
/// Values are rational strings ("a" or "a/b") or JSON integers. Output is
/// canonical (rings sorted, values reduced), so parse(emit(f)) == f and
/// emit(parse(emit(f))) == emit(f) byte for byte.
std::string function_to_json(const RadialStepFunction& f);
/// Throws ParameterError on malformed input.
RadialStepFunction function_from_json(std::string_view text);
/// Throws ParameterError if the file cannot be read or parsed.
RadialStepFunction read_function_file(const std::string& path);

/// Report JSON; scalars are decimal strings with `digits` significant digits,
/// each paired with an exactness flag.
std::string report_to_json(const VerificationReport& report, int digits);

/// One cell of a parameter sweep. `report` is empty for skipped cells, which
/// carry the reason instead.
struct SweepRow {
  std::vector<std::string> parameters;
  std::optional<VerificationReport> report;
  std::string reason;
};

/// Header plus one line per row: parameters, theoretical_constant,
/// constant_exact, extremizer_ratio, extremizer_exact, max_random_ratio,
/// max_random_exact, max_signed_ratio, redraws, pass, reason.
std::string sweep_csv(const std::vector<std::string>& parameter_names,
                      const std::vector<SweepRow>& rows, int digits);

}  // namespace ultrametric
