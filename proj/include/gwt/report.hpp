#pragma once

// Human-readable and JSON renderings of check reports and independence
// searches. JSON output is byte-stable for identical inputs.

#include <string>

#include "gwt/axioms.hpp"
#include "gwt/padoa.hpp"

namespace gwt {

inline constexpr const char* kReportSchema = "gwtherm-report/1";

/// suite is "theta" or "timeless".
std::string report_text(const CheckReport& r, const std::string& suite);
std::string report_json(const CheckReport& r, const Tolerance& tol, const std::string& suite);

std::string search_text(const SearchResult& s, const std::string& target);
std::string search_json(const SearchResult& s, const std::string& target);

}  // namespace gwt
