#pragma once

#include <string>
#include <string_view>

#include "luxfield/decomposition.hpp"

namespace luxfield {

/// Strict "YYYY-MM-DDTHH:MM:SSZ" (UTC). Throws MalformedFile on anything else.
Timestamp parse_iso8601(std::string_view text, std::size_t line = 0);

std::string format_iso8601(Timestamp t);

/// Filesystem-safe stamp: "YYYYMMDDTHHMMSSZ".
std::string format_compact(Timestamp t);

/// "HH:MM" → seconds past midnight. Throws MalformedFile.
int parse_hhmm(std::string_view text);

/// Start of the UTC day containing t.
Timestamp day_start(Timestamp t);

}  // namespace luxfield
