#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

#include "mwc/format.hpp"

namespace mwc::cli {

namespace {

std::string scalar(const Json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : " ") + scalar(e);
        return s;
    }
    return v.dump();
}

bool is_table(const Json& v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& r) { return r.is_object(); });
}

void table(std::ostream& out, const std::string& title, const Json& rows) {
    std::vector<std::string> cols;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
        if (!it.value().is_object()) cols.push_back(it.key());
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : cols) width.push_back(c.size());
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            line.push_back(r.contains(cols[c]) ? scalar(r[cols[c]]) : "-");
            width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    out << title << '\n';
    auto row = [&](const std::vector<std::string>& v) {
        out << ' ';
        for (std::size_t c = 0; c < v.size(); ++c) {
            out << ' ' << v[c];
            if (c + 1 < v.size()) out << std::string(width[c] - v[c].size(), ' ');
        }
        out << '\n';
    };
    row(cols);
    for (const auto& l : cells) row(l);
}

void render(std::ostream& out, const std::string& prefix, const Json& v) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        const Json& x = it.value();
        if (x.is_object()) {
            render(out, key, x);
        } else if (is_table(x)) {
            table(out, key, x);
        } else if (x.is_array()) {
            out << key << ':';
            for (const auto& e : x) out << ' ' << scalar(e);
            out << '\n';
        } else {
            out << key << ": " << scalar(x) << '\n';
        }
    }
}

}  // namespace

void emit(std::ostream& out, const Json& report, bool as_json) {
    if (as_json)
        out << report.dump(2) << '\n';
    else
        render(out, "", report);
}

std::string hex64(std::uint64_t x) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace mwc::cli
