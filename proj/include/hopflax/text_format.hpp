#pragma once

#include <string>
#include <string_view>

namespace hopflax {

/// Shortest round-trip decimal representation, independent of the C/C++
/// locale. Infinities print as "inf" / "-inf", NaN as "nan".
std::string format_double(double value);

/// Locale-independent parse of a full token; throws std::invalid_argument.
double parse_double(std::string_view token);
long long parse_integer(std::string_view token);

}  // namespace hopflax
