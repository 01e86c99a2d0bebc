#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace mwc::cli {

using Json = nlohmann::ordered_json;

struct Context {
    std::uint64_t seed = 0x5EED;
    int threads = 0;
    bool json = false;
    bool timing = false;
};

void emit(std::ostream& out, const Json& report, bool as_json);
std::string hex64(std::uint64_t x);

}  // namespace mwc::cli
