#ifndef PROCEVO_TIMESTAMP_HPP
#define PROCEVO_TIMESTAMP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace procevo {

/// Seconds since 1970-01-01T00:00:00Z.
using EpochSeconds = std::int64_t;

/// Accepts `YYYY-MM-DDTHH:MM:SS[.fff](Z|±HH:MM)` and `YYYY-MM-DD` (midnight UTC).
/// Fractional seconds are truncated.
std::optional<EpochSeconds> parse_iso8601(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(EpochSeconds seconds);

/// `YYYY-MM-DD` of the UTC day containing `seconds`.
std::string format_date(EpochSeconds seconds);

} // namespace procevo

#endif
