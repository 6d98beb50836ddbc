#ifndef DYNOPT_OPTIMIZERS_TRAJECTORY_HPP
#define DYNOPT_OPTIMIZERS_TRAJECTORY_HPP

#include "dynopt/core/objective.hpp"
#include "dynopt/core/overrides.hpp"
#include "dynopt/optimizers/optimizer.hpp"

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dynopt::optimizers {

/// Error samples of one optimizer run.
///
/// A window is the span of evaluations between two environment changes.
/// For each window: E_last is the error of the best value found in the
/// window at its final evaluation, r_last the matching ratio, and
/// ratio_samples holds S ratios taken at evenly spaced evaluations.
/// Ratios are normalised so 1 means the optimum value was reached.
struct TrajectoryRecord
{
    std::uint64_t evaluations = 0;
    std::vector<double> errors; ///< per evaluation; empty unless traced
    std::vector<double> e_last;
    std::vector<double> r_last;
    std::vector<std::vector<double>> ratio_samples;

    std::size_t windows() const { return e_last.size(); }
};

/// `eval_count,error` lines, then `change_index,E_last` lines.
void write_trajectory(const TrajectoryRecord& rec, std::ostream& out);

struct RecordOptions
{
    std::size_t samples = 20;
    bool keep_trace = false;
};

/// Decorator that measures the error of the best value found since the
/// last environment change, as seen from outside the optimizer.
class RecordingObjective final : public DynamicObjective
{
public:
    /// `window` evaluations per environment; for static problems pass the
    /// whole budget.
    RecordingObjective(DynamicObjective& inner, std::uint64_t window, RecordOptions options);

    double evaluate(std::span<const double> x) override;
    std::size_t dimension() const override { return inner_.dimension(); }
    double lower_bound() const override { return inner_.lower_bound(); }
    double upper_bound() const override { return inner_.upper_bound(); }
    Sense sense() const override { return inner_.sense(); }
    double optimum_value() const override { return inner_.optimum_value(); }
    std::uint64_t evaluations() const override { return count_; }
    std::uint64_t change_frequency() const override { return inner_.change_frequency(); }

    const TrajectoryRecord& record() const { return record_; }
    TrajectoryRecord take_record() { return std::move(record_); }

    /// Ratio of `best` to `optimum` under `sense`, capped at 1.
    static double ratio(Sense sense, double best, double optimum);

private:
    DynamicObjective& inner_;
    std::uint64_t window_;
    RecordOptions options_;
    std::vector<std::uint64_t> sample_points_;
    std::size_t next_sample_ = 0;
    std::uint64_t count_ = 0;
    double best_ = 0.0;
    std::vector<double> current_samples_;
    TrajectoryRecord record_;
};

/// Identifiers accepted by make_optimizer and run.
inline constexpr std::string_view optimizer_ids[] = {"qcsso", "ssa_baseline", "pso_baseline"};

/// Throws std::invalid_argument for an unknown id and ConfigError for bad
/// overrides.
std::unique_ptr<Optimizer> make_optimizer(std::string_view id, DynamicObjective& problem,
                                          std::uint64_t budget, std::uint64_t seed,
                                          const Overrides& overrides = {});

/// Drives `id` on `problem` until `budget` evaluations are spent.
TrajectoryRecord run(std::string_view id, DynamicObjective& problem, std::uint64_t budget,
                     std::uint64_t seed, const Overrides& overrides = {}, RecordOptions options = {});

} // namespace dynopt::optimizers

#endif // DYNOPT_OPTIMIZERS_TRAJECTORY_HPP
