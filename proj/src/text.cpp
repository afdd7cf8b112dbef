#include "dcr/text.hpp"

#include <charconv>
#include <system_error>

#include "dcr/error.hpp"

namespace dcr {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || s.empty()) {
        throw ValidationError("not a valid decimal number: '" + std::string(s) + "'");
    }
    return v;
}

long long parse_int(std::string_view s) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || s.empty()) {
        throw ValidationError("not a valid integer: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace dcr
