#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "uisdial/estimator/estimator.h"

namespace uisdial::estimator {

// Canonical one-line encoding of an estimation request:
//
//   <kind> TAB "TARGET" TAB <target> { TAB ("SYS" | "USR") TAB <text> }
//
// Turns follow the request order (most recent first) and only the first
// `window` turns are written. Backslash, tab, CR and LF inside texts are
// escaped as \\ \t \r \n, so the line never contains a raw newline.
// turn_index and s1_pattern are not part of the line.
std::string serialize_context(const EstimationRequest& request, int window);
EstimationRequest parse_serialized_context(std::string_view line);

std::string escape_field(std::string_view text);
std::string unescape_field(std::string_view text);

// JSON body of the external-estimator protocol:
//   {"kind", "target", "context": [{"role", "text"}], "window", "turn_index",
//    "s1_pattern", "line"}
nlohmann::json to_wire_json(const EstimationRequest& request, int window);
EstimationRequest from_wire_json(const nlohmann::json& j);

}  // namespace uisdial::estimator
