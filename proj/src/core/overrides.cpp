#include "dynopt/core/overrides.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dynopt {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what)
{
    throw ConfigError("invalid value for '" + key + "': '" + value + "' (expected " + what + ")");
}

} // namespace

Overrides Overrides::parse(std::string_view text)
{
    Overrides out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        out.set(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

Overrides Overrides::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read configuration file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Overrides Overrides::with_prefix(std::string_view prefix) const
{
    Overrides out;
    for (const auto& [k, v] : values_) {
        if (k.size() > prefix.size() && std::string_view(k).substr(0, prefix.size()) == prefix) {
            used_.insert(k);
            out.set(k.substr(prefix.size()), v);
        }
    }
    return out;
}

const std::string* Overrides::lookup(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return nullptr;
    used_.insert(key);
    return &it->second;
}

void Overrides::read(const std::string& key, double& out) const
{
    const auto* v = lookup(key);
    if (!v)
        return;
    double parsed = 0.0;
    const auto* end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, parsed);
    if (res.ec != std::errc{} || res.ptr != end)
        bad_value(key, *v, "a real number");
    out = parsed;
}

void Overrides::read(const std::string& key, int& out) const
{
    const auto* v = lookup(key);
    if (!v)
        return;
    int parsed = 0;
    const auto* end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, parsed);
    if (res.ec != std::errc{} || res.ptr != end)
        bad_value(key, *v, "an integer");
    out = parsed;
}

void Overrides::read(const std::string& key, std::uint64_t& out) const
{
    const auto* v = lookup(key);
    if (!v)
        return;
    std::uint64_t parsed = 0;
    const auto* end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, parsed);
    if (res.ec != std::errc{} || res.ptr != end)
        bad_value(key, *v, "a non-negative integer");
    out = parsed;
}

void Overrides::read(const std::string& key, bool& out) const
{
    const auto* v = lookup(key);
    if (!v)
        return;
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on")
        out = true;
    else if (*v == "0" || *v == "false" || *v == "no" || *v == "off")
        out = false;
    else
        bad_value(key, *v, "a boolean");
}

void Overrides::read(const std::string& key, std::string& out) const
{
    if (const auto* v = lookup(key))
        out = *v;
}

void Overrides::reject_unused(std::string_view context) const
{
    for (const auto& [k, v] : values_) {
        if (!used_.count(k))
            throw ConfigError("unknown " + std::string(context) + " key '" + k + "'");
    }
}

} // namespace dynopt
