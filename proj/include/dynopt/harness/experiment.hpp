#ifndef DYNOPT_HARNESS_EXPERIMENT_HPP
#define DYNOPT_HARNESS_EXPERIMENT_HPP

#include "dynopt/core/objective.hpp"
#include "dynopt/core/overrides.hpp"
#include "dynopt/gdbg/change.hpp"
#include "dynopt/gdbg/instance.hpp"
#include "dynopt/harness/metrics.hpp"
#include "dynopt/optimizers/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dynopt::harness {

/// A benchmark case: function variant and change type, written "F1_10:T3".
struct CaseId
{
    gdbg::Problem problem = gdbg::Problem::f1_10;
    gdbg::ChangeType change = gdbg::ChangeType::small_step;

    std::string str() const;
    friend bool operator==(const CaseId&, const CaseId&) = default;
};

/// All 49 cases, function-major.
std::vector<CaseId> all_cases();

/// Cases matching `pattern`: "*", "F1_10:T3", "F1:T3" (both peak
/// settings), "F2" or "F2:*" (all change types), "*:T5". Throws
/// std::invalid_argument naming the unknown function or change type.
std::vector<CaseId> match_cases(std::string_view pattern);

/// Uniform weights 100/49 for every case.
std::map<std::string, double> uniform_weights();

/// Reads `case<TAB>weight` lines ('#' comments allowed). The weights must
/// cover all 49 cases and sum to 100 within 1e-9.
std::map<std::string, double> load_weights(const std::string& path);

struct ExperimentConfig
{
    std::vector<CaseId> cases = all_cases();
    std::vector<std::string> optimizers = {"qcsso", "pso_baseline", "ssa_baseline"};
    int runs = 20;
    int num_change = 60;
    std::uint64_t change_frequency = 0; ///< 0: 10000 * D
    int samples = 20;
    std::uint64_t seed = 0;
    bool seed_set = false; ///< whether `seed` came from the file
    std::map<std::string, double> weights = uniform_weights();

    Overrides gdbg;
    std::map<std::string, Overrides> optimizer_overrides; ///< by optimizer id

    /// Parses the key=value experiment format. Relative weight paths are
    /// resolved against `base_dir`.
    static ExperimentConfig from_overrides(const Overrides& o, const std::string& base_dir = ".");
    static ExperimentConfig load(const std::string& path);

    void validate() const;
};

/// Builds the problem for one run; the seed is already derived.
using ProblemFactory = std::function<std::unique_ptr<DynamicObjective>(std::uint64_t seed)>;

std::uint64_t problem_seed(std::uint64_t base, const CaseId& c, int run);
std::uint64_t optimizer_seed(std::uint64_t base, const CaseId& c, std::string_view optimizer, int run);

/// Factory for the GDBG instance of `c` under the config's overrides.
ProblemFactory gdbg_factory(const ExperimentConfig& config, const CaseId& c);

/// One run: returns the recorded trajectory. The budget is
/// num_change * change frequency of the problem.
optimizers::TrajectoryRecord run_once(const ExperimentConfig& config, const ProblemFactory& factory,
                                      const CaseId& c, std::string_view optimizer, int run,
                                      bool keep_trace = false);

/// Seeded runs of one case assembled into an ErrorMatrix. `jobs` threads
/// run independent runs; the result does not depend on `jobs`.
ErrorMatrix collect_errors(const ExperimentConfig& config, const ProblemFactory& factory, const CaseId& c,
                           std::string_view optimizer, int jobs = 1);

CaseResult run_case(const ExperimentConfig& config, const CaseId& c, std::string_view optimizer, int jobs = 1);

struct CaseOutcome
{
    std::string optimizer;
    CaseId id;
    ErrorMatrix errors;
    CaseResult result;
};

/// Every (optimizer, case) pair of the config, in config order. Work is
/// spread over `jobs` threads at run granularity. When `trace` is set it
/// is called with the traced first run of each pair.
std::vector<CaseOutcome> run_experiment(
    const ExperimentConfig& config, int jobs = 1,
    const std::function<void(const CaseOutcome&, const optimizers::TrajectoryRecord&)>& trace = {});

} // namespace dynopt::harness

#endif // DYNOPT_HARNESS_EXPERIMENT_HPP
