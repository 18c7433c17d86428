#pragma once

// Small parsing and formatting helpers shared by the text file formats.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spmvsel::text {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool is_blank(std::string_view line) { return split_ws(line).empty(); }

template <class T>
std::optional<T> parse_uint(std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// Splits "key:value key:value ..." at the first ':' of each token.
inline std::optional<std::vector<std::pair<std::string_view, std::string_view>>>
parse_key_values(std::string_view line) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    for (auto tok : split_ws(line)) {
        auto colon = tok.find(':');
        if (colon == std::string_view::npos || colon == 0)
            return std::nullopt;
        out.emplace_back(tok.substr(0, colon), tok.substr(colon + 1));
    }
    return out;
}

} // namespace spmvsel::text
