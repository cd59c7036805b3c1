#pragma once

#include <json.hpp>

#include "cellrev/rule.hpp"
#include "cellrev/tree.hpp"

namespace cellrev {

// Schema: {"class", "expressions": [{"modulus","offset"}], "irreversibleFrom" (null or int),
// "sporadic": [int], "M", "lastUniqueLevel"}.
nlohmann::json report_to_json(const ReversibilityReport& r);
// Throws ParseError on a malformed document.
ReversibilityReport report_from_json(const nlohmann::json& j);

nlohmann::json fixed_size_to_json(const FixedSizeResult& r, long long n);
FixedSizeResult fixed_size_from_json(const nlohmann::json& j);

}  // namespace cellrev
