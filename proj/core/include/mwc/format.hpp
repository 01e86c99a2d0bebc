#pragma once

#include <string>
#include <string_view>

namespace mwc {

// Shortest decimal representation that round-trips exactly.
std::string format_double(double x);

// Strict full-token parse; throws Error("parse_error").
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

}  // namespace mwc
