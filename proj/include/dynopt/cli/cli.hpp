#ifndef DYNOPT_CLI_CLI_HPP
#define DYNOPT_CLI_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynopt::cli {

/// Invalid command line; maps to exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Verb { list, run, score, selftest };

struct Command
{
    Verb verb = Verb::list;
    std::optional<std::string> config;
    std::string out = "results";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> cases;      ///< filter patterns, validated
    std::vector<std::string> optimizers; ///< validated ids
    int jobs = 1;
    bool trace = false;
    std::optional<std::string> weights;
};

inline constexpr int exit_success = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Parses and validates argv. Throws UsageError on any problem. Returns
/// nullopt after printing help to `out`.
std::optional<Command> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs a validated command; returns the exit code. Runtime failures are
/// reported as one line on `err`.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + execute with the exit-code contract: 0 success, 1 runtime
/// failure, 2 usage error.
int main_entry(int argc, const char* const* argv);

} // namespace dynopt::cli

#endif // DYNOPT_CLI_CLI_HPP
