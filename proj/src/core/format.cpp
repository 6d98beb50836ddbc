#include "dynopt/core/format.hpp"

#include <charconv>
#include <cstdio>

namespace dynopt {

std::string format_roundtrip(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_scientific(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*E", digits, v);
    return buf;
}

std::string format_fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace dynopt
