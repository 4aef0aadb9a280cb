#pragma once

// Number and token helpers shared by the text-form parsers.

#include <string>
#include <string_view>
#include <vector>

namespace pointpair::text {

/// Shortest representation that round-trips through parse_double.
std::string format_double(double v);

/// Parses the whole of `s` as a finite double; throws ParseError otherwise.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// Replaces U+2212 MINUS SIGN with '-' and strips ASCII whitespace.
std::string normalize(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

} // namespace pointpair::text
