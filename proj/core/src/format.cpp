#include "mwc/format.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "mwc/error.hpp"

namespace mwc {

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) fail("internal_error", "number formatting failed");
    return std::string(buf, end);
}

double parse_double(std::string_view token) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(x))
        fail("parse_error", "invalid number '" + std::string(token) + "'");
    return x;
}

long long parse_int(std::string_view token) {
    long long x = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        fail("parse_error", "invalid integer '" + std::string(token) + "'");
    return x;
}

}  // namespace mwc
