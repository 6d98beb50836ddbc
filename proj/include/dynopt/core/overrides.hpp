#ifndef DYNOPT_CORE_OVERRIDES_HPP
#define DYNOPT_CORE_OVERRIDES_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynopt {

/// Raised for malformed or unknown configuration keys/values.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value configuration set.
///
/// Used everywhere a component accepts parameter overrides: benchmark
/// instances, optimizers and the experiment file. Consumers read keys
/// through the typed getters and finally call reject_unused() so that a
/// misspelt key is an error instead of a silently ignored setting.
class Overrides
{
public:
    Overrides() = default;
    Overrides(std::initializer_list<std::pair<const std::string, std::string>> init)
        : values_(init)
    {
    }

    /// Parses "key=value" lines. Blank lines and '#' comments are skipped.
    static Overrides parse(std::string_view text);
    static Overrides load(const std::string& path);

    void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    bool empty() const { return values_.empty(); }
    const std::map<std::string, std::string>& values() const { return values_; }

    /// Keys starting with `prefix`, with the prefix stripped.
    Overrides with_prefix(std::string_view prefix) const;

    // Typed reads. Missing keys leave `out` untouched.
    void read(const std::string& key, double& out) const;
    void read(const std::string& key, int& out) const;
    void read(const std::string& key, std::uint64_t& out) const;
    void read(const std::string& key, bool& out) const;
    void read(const std::string& key, std::string& out) const;

    /// Throws ConfigError naming the first key that no read() touched.
    void reject_unused(std::string_view context) const;

private:
    const std::string* lookup(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

} // namespace dynopt

#endif // DYNOPT_CORE_OVERRIDES_HPP
