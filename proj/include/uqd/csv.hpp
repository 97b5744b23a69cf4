#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <uqd/errors.hpp>

namespace uqd::csv {

/// Round-trip text with 17 significant digits.
inline std::string real(double v)
{
    if (v == 0.0)
        v = 0.0; // no "-0"
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

/// Shortest text that parses back to v, for labels.
inline std::string shortest(double v)
{
    if (v == 0.0)
        v = 0.0;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',')
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline std::string_view trim_cr(std::string_view s)
{
    if (!s.empty() && s.back() == '\r')
        s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view s, std::string_view column)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("csv: bad real '" + std::string(s) + "' in column " + std::string(column));
    return v;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view column)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("csv: bad integer '" + std::string(s) + "' in column " + std::string(column));
    return v;
}

} // namespace uqd::csv
