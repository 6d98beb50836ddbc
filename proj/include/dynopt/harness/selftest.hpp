#ifndef DYNOPT_HARNESS_SELFTEST_HPP
#define DYNOPT_HARNESS_SELFTEST_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dynopt::harness {

struct SelftestCheck
{
    std::string name;
    bool passed = false;
    std::string detail; ///< first failure, empty on success
};

/// Quick invariant checks over metrics, benchmark and optimizers.
/// Writes one `PASS name` / `FAIL name: detail` line per check to `log`.
std::vector<SelftestCheck> run_selftest(std::ostream& log);

} // namespace dynopt::harness

#endif // DYNOPT_HARNESS_SELFTEST_HPP
