#ifndef DYNOPT_OPTIMIZERS_BASELINES_HPP
#define DYNOPT_OPTIMIZERS_BASELINES_HPP

#include "dynopt/core/overrides.hpp"
#include "dynopt/optimizers/optimizer.hpp"
#include "dynopt/optimizers/qcsso.hpp"

#include <vector>

namespace dynopt::optimizers {

struct SsaConfig
{
    int population = 50;
    Schedule schedule = Schedule::per_environment;
    std::uint64_t max_iterations = 0;

    void apply_overrides(const Overrides& o);
};

/// Standard salp swarm: one chain, leader moved around the food source,
/// followers average with their predecessor. The food is re-evaluated
/// every iteration so that a changed environment refreshes its value.
class SsaBaseline final : public Optimizer
{
public:
    SsaBaseline(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, SsaConfig config = {});

    std::string_view name() const override { return "ssa_baseline"; }
    bool step() override;
    std::uint64_t evaluations_used() const override { return eval_.used(); }

    const std::vector<std::vector<double>>& positions() const { return positions_; }
    double food_fitness() const { return food_fitness_; }
    const std::vector<double>& food_position() const { return food_; }

private:
    std::uint64_t horizon() const;
    void offer(const std::vector<double>& x, double f);

    SsaConfig config_;
    Evaluator eval_;
    Rng rng_;
    std::vector<std::vector<double>> positions_;
    std::vector<double> food_;
    double food_fitness_ = 0.0;
    std::uint64_t l_ = 0;
    bool initialized_ = false;
};

struct PsoConfig
{
    int population = 50;
    double chi = 0.7298;
    double c1 = 1.49618;
    double c2 = 1.49618;

    void apply_overrides(const Overrides& o);
};

/// Global-best PSO with the constriction-equivalent inertia weight.
/// Velocities are clamped to the full box width; on a detected change
/// all personal bests are re-evaluated.
class PsoBaseline final : public Optimizer
{
public:
    PsoBaseline(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, PsoConfig config = {});

    std::string_view name() const override { return "pso_baseline"; }
    bool step() override;
    std::uint64_t evaluations_used() const override { return eval_.used(); }

    double gbest_fitness() const { return pbest_fitness_[gbest_]; }
    const std::vector<std::vector<double>>& positions() const { return x_; }

private:
    void refresh_gbest();

    PsoConfig config_;
    Evaluator eval_;
    Rng rng_;
    std::vector<std::vector<double>> x_;
    std::vector<std::vector<double>> v_;
    std::vector<std::vector<double>> pbest_;
    std::vector<double> pbest_fitness_;
    std::size_t gbest_ = 0;
    bool initialized_ = false;
};

} // namespace dynopt::optimizers

#endif // DYNOPT_OPTIMIZERS_BASELINES_HPP
