#ifndef DYNOPT_OPTIMIZERS_QCSSO_HPP
#define DYNOPT_OPTIMIZERS_QCSSO_HPP

#include "dynopt/core/overrides.hpp"
#include "dynopt/optimizers/optimizer.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dynopt::optimizers {

/// Candidate solution.
struct Salp
{
    std::vector<double> position;
    double fitness = 0.0;
    std::vector<double> pbest_position;
    double pbest_fitness = 0.0;
    std::uint64_t age = 0;        ///< iterations since (re)initialization
    std::uint64_t stagnation = 0; ///< iterations without pbest improvement
};

/// One chain of the multi-population swarm. Members are contiguous salp
/// indices; `best` is the member with the best personal best.
struct SubPopulation
{
    std::vector<std::size_t> members;
    std::size_t best = 0;
};

enum class InertiaMode { fixed, chaotic };
enum class AttractorMode { convex, literal };

/// How the iteration index l and horizon L are tied to the budget:
/// per_environment restarts l at every detected change with L covering
/// one change window; per_run spans the whole budget.
enum class Schedule { per_environment, per_run };

struct QcssoConfig
{
    int population = 50;
    int subpopulations = 5;
    int leaders = 2; ///< chain members updated by the quantum rule

    double w0 = 0.70;
    InertiaMode w_mode = InertiaMode::fixed;
    double w_fixed = 0.96;
    double chaos_rate = 4.0;

    double momentum = 0.5;
    double c3_threshold = 0.5;
    AttractorMode attractor = AttractorMode::convex;

    int max_age = 30;
    int min_age = 10;
    double reinit_probability = 0.1;
    /// An aged salp restarts its position but keeps its personal best
    /// unless the restart point is better. Off: the memory is replaced too.
    bool aging_keeps_memory = true;

    /// Exclusion radius as a fraction of (u - l) * sqrt(D); 0 disables
    /// exclusion. A non-negative exclusion_radius overrides it.
    double exclusion_fraction = 0.0;
    double exclusion_radius = -1.0;
    /// Probe spread as a fraction of (u - l); a non-negative probe_sigma
    /// overrides it.
    double probe_fraction = 0.1;
    double probe_sigma = -1.0;

    Schedule schedule = Schedule::per_environment;
    std::uint64_t max_iterations = 0; ///< 0: derived from the budget

    void apply_overrides(const Overrides& o);
    void validate() const;
};

/// Per-iteration coefficients.
struct IterationContext
{
    std::uint64_t l = 0;
    std::uint64_t max_iter = 1;
    double b = 0.0;
    double c = 0.0;
    double w = 0.0;
    std::vector<double> best_mean;
};

/// Quantum-inspired chaotic salp swarm with multi-population overlap
/// search, aging and memory re-evaluation on change.
///
/// Iteration 0 of each schedule window builds the chains with the
/// standard salp rules; later iterations move chain members 1..leaders
/// with the quantum rule and the rest with the momentum follower rule.
class Qcsso final : public Optimizer
{
public:
    Qcsso(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, QcssoConfig config = {});

    std::string_view name() const override { return "qcsso"; }
    bool step() override;
    std::uint64_t evaluations_used() const override { return eval_.used(); }

    const QcssoConfig& config() const { return config_; }
    const std::vector<Salp>& salps() const { return salps_; }
    const std::vector<SubPopulation>& subpopulations() const { return subpops_; }
    const IterationContext& context() const { return context_; }
    bool initialized() const { return initialized_; }

    std::size_t global_best() const { return food_; }
    const std::vector<double>& food_position() const { return salps_[food_].pbest_position; }
    double food_fitness() const { return salps_[food_].pbest_fitness; }

    double exclusion_radius() const;
    double probe_sigma() const;

    // The phases of one iteration, public so they can be driven directly.

    /// Re-evaluates the food position; on a discrepancy re-evaluates all
    /// personal bests. Also reacts to a changed problem dimension.
    bool detect_change();
    void ssa_chain_init();
    void quantum_chain_update();
    void overlap_search();
    /// `draw` yields the uniform numbers compared against the reinit
    /// probability.
    void aging_step(const std::function<double()>& draw);
    void aging_step();

    /// Counts of (re)initializations, for diagnostics and tests.
    std::uint64_t reinitializations() const { return reinits_; }
    /// Index of the salp whose reinitialization would violate the
    /// global-best protection, if that ever happened (never expected).
    bool protected_salp_reset() const { return protected_reset_; }

private:
    void initialize();
    bool evaluate_positions();
    void update_pbest(Salp& s);
    void refresh_bests();
    bool reinitialize(std::size_t index, bool keep);
    void conform_all();
    std::uint64_t horizon() const;

    DynamicObjective& problem_;
    QcssoConfig config_;
    Evaluator eval_;
    Rng rng_;
    std::vector<Salp> salps_;
    std::vector<SubPopulation> subpops_;
    std::size_t food_ = 0;
    IterationContext context_;
    double w_state_;
    bool initialized_ = false;
    std::uint64_t reinits_ = 0;
    bool protected_reset_ = false;
};

} // namespace dynopt::optimizers

#endif // DYNOPT_OPTIMIZERS_QCSSO_HPP
