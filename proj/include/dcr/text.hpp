// Locale-independent number formatting and strict parsing.
//
// All file output goes through format_double, which emits the shortest
// decimal string that round-trips to the same IEEE double ('.' separator,
// no locale involvement). That keeps CSV/JSON outputs byte-stable across
// repeated runs, which the test suite relies on.
#pragma once

#include <string>
#include <string_view>

namespace dcr {

// Shortest round-trip decimal representation of v.
std::string format_double(double v);

// Strict parsers: the whole input must be consumed, otherwise ValidationError.
// Leading/trailing whitespace is rejected.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

}  // namespace dcr
