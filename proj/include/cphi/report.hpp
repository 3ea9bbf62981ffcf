/*
 * report.hpp: JSON report envelopes for the CLI.
 *
 * Every command wraps its payload in the same envelope: the command name,
 * the canonical input specs, the result, the full tolerance table in force,
 * and the artifact version. Serialization is deterministic: insertion-order
 * keys and shortest round-trip decimals, so identical invocations emit
 * byte-identical reports.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "cphi/complex_util.hpp"
#include "cphi/tolerances.hpp"

namespace cphi {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";

// {"re": ..., "im": ...}
ordered_json json_complex(cplx v);

// every tolerance the library consults, in header order
tol::Table full_tolerance_table();

ordered_json report_envelope(const std::string& command, ordered_json inputs,
                             ordered_json result);

// envelope -> pretty-printed JSON with trailing newline
std::string render_report(const ordered_json& envelope);

}  // namespace cphi
