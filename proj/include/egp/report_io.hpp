#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egp/verify.hpp"

namespace egp {

/// A list of reports plus the optional wall-clock stamp attached to each
/// serialized object.
struct ReportDocument
{
    std::vector<VerificationReport> reports;
    std::optional<std::string> timestamp;
};

/// Shortest text that is exact for a double: 17 significant digits.
std::string format_number(double v);

/// JSON array, one object per report. Non-finite margins become null.
std::string to_json(const ReportDocument& doc);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
ReportDocument from_json(const std::string& text);

/// Header plus one row per report, LF line endings.
std::string to_csv(const ReportDocument& doc);

std::string to_plain(const ReportDocument& doc);

/// UTC time in ISO 8601, second resolution.
std::string utc_timestamp();

} // namespace egp
