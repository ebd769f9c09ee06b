#pragma once

#include "subord/analytic.hpp"
#include "subord/conditions.hpp"
#include "subord/verifier.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace subord::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Serializes with insertion-ordered keys, two-space indentation and every float
/// printed with 17 significant digits; non-finite floats become null.
std::string dump(const Json& j);

Json complex_json(Complex z);
Json series_json(const std::vector<Complex>& coeffs);

/// Accepts [[re, im], ...] or plain real entries.
std::vector<Complex> parse_series(const Json& j);

Json params_json(Family family, const TheoremParams& params, bool with_beta);
Json report_json(const AdmissibilityReport& report);
Json verdict_json(const SampleVerdict& verdict);

} // namespace subord::cli
