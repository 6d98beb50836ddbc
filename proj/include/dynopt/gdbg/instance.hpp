#ifndef DYNOPT_GDBG_INSTANCE_HPP
#define DYNOPT_GDBG_INSTANCE_HPP

#include "dynopt/core/objective.hpp"
#include "dynopt/core/overrides.hpp"
#include "dynopt/core/rng.hpp"
#include "dynopt/gdbg/change.hpp"
#include "dynopt/gdbg/landscapes.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dynopt::gdbg {

/// The seven benchmark variants; F1 appears with 10 and with 50 peaks.
enum class Problem { f1_10, f1_50, f2, f3, f4, f5, f6 };

inline constexpr std::array<Problem, 7> all_problems{
    Problem::f1_10, Problem::f1_50, Problem::f2, Problem::f3, Problem::f4, Problem::f5, Problem::f6,
};

/// Identifier usable in file names and filters: "F1_10", "F1_50", "F2".."F6".
std::string to_string(Problem p);
/// Table label: "F1(10)", "F1(50)", "F2".."F6".
std::string display_name(Problem p);
/// Accepts "F1_10", "F1(10)", "F1_50", "F1(50)", "F2".."F6".
Problem parse_problem(std::string_view text);

/// Tunable constants of the generator. Every field can be overridden by
/// a key of the same name (see apply_overrides).
struct GdbgConfig
{
    int dimension = 10;
    int min_dimension = 5;
    int max_dimension = 15;
    double search_bound = 5.0; ///< search box is [-b, b]^D

    double height_min = 10.0;
    double height_max = 100.0;
    double height_init = 50.0;
    double height_severity = 5.0;

    double width_min = 1.0;
    double width_max = 10.0;
    double width_init = 5.0;
    double width_severity = 0.5;

    double angle_min = -3.14159265358979323846;
    double angle_max = 3.14159265358979323846;
    double angle_init = 0.0;
    double angle_severity = 1.0;

    ChangeDynamics dynamics{};

    int peaks = 0; ///< 0: taken from the problem variant
    int components = 10;
    double sigma = 1.0;
    double normalizer = 2000.0;
    bool identity_rotations = false;
    bool random_phase = true;
    WeierstrassParams weierstrass{};

    /// Evaluations per environment; 0 means 10000 * dimension.
    std::uint64_t change_frequency = 0;

    void apply_overrides(const Overrides& o);
};

/// One benchmark case with its evolving environment.
///
/// Single-owner mutable state: evaluate() advances the environment every
/// change_frequency() calls. Two instances built from the same arguments
/// produce identical value sequences for identical call sequences.
class GdbgInstance final : public DynamicObjective
{
public:
    GdbgInstance(Problem problem, ChangeType change, std::uint64_t seed, GdbgConfig config = {});
    GdbgInstance(Problem problem, ChangeType change, std::uint64_t seed, const Overrides& overrides);

    double evaluate(std::span<const double> x) override;
    std::size_t dimension() const override { return static_cast<std::size_t>(dims_.dimension); }
    double lower_bound() const override { return -config_.search_bound; }
    double upper_bound() const override { return config_.search_bound; }
    Sense sense() const override;
    double optimum_value() const override;
    std::uint64_t evaluations() const override { return evaluations_; }
    std::uint64_t change_frequency() const override { return frequency_; }

    /// Evaluates without counting or triggering a change.
    double peek(std::span<const double> x) const;

    /// Moves to the next environment (t -> t + 1).
    void advance_environment();

    Problem problem() const { return problem_; }
    ChangeType change_type() const { return change_; }
    std::uint64_t change_index() const { return t_; }
    int dimension_direction() const { return dims_.direction; }
    const GdbgConfig& config() const { return config_; }
    const DynamicParam& rotation_angle() const { return angle_; }

    bool is_peak_problem() const { return std::holds_alternative<PeakSet>(payload_); }
    const PeakSet& peaks() const { return std::get<PeakSet>(payload_); }
    const CompositionProblem& composition() const { return std::get<CompositionProblem>(payload_); }

    /// Position of the component/peak holding the optimum value.
    std::vector<double> optimum_position() const;

    /// (name, value) pairs for all control parameters of the environment.
    std::vector<std::pair<std::string, double>> parameter_snapshot() const;

private:
    void change_dimension(int new_dim);
    std::vector<DynamicParam>& heights();
    const std::vector<DynamicParam>& heights() const;
    std::vector<std::vector<double>>& positions();
    DynamicParam make_param(double init, double lo, double hi, double severity);

    Problem problem_;
    ChangeType change_;
    GdbgConfig config_;
    Rng rng_;
    DimensionState dims_;
    std::uint64_t t_ = 0;
    std::uint64_t evaluations_ = 0;
    std::uint64_t frequency_ = 0;
    DynamicParam angle_;
    std::variant<PeakSet, CompositionProblem> payload_;
};

/// Writes `t,param_name,value` lines for t = 0..changes (shortest
/// round-trip decimal values). The instance is advanced `changes` times.
void write_golden_trajectory(GdbgInstance& inst, std::uint64_t changes, std::ostream& out);

} // namespace dynopt::gdbg

#endif // DYNOPT_GDBG_INSTANCE_HPP
