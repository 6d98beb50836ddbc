#include "dynopt/optimizers/baselines.hpp"

#include "dynopt/optimizers/qcsso_rules.hpp"

#include <algorithm>
#include <cmath>

namespace dynopt::optimizers {

void SsaConfig::apply_overrides(const Overrides& o)
{
    o.read("population", population);
    std::string sched = schedule == Schedule::per_environment ? "environment" : "run";
    o.read("schedule", sched);
    if (sched == "environment")
        schedule = Schedule::per_environment;
    else if (sched == "run")
        schedule = Schedule::per_run;
    else
        throw ConfigError("schedule must be 'environment' or 'run'");
    o.read("max_iterations", max_iterations);
    o.reject_unused("ssa_baseline");
    if (population < 2)
        throw ConfigError("population must be >= 2");
}

SsaBaseline::SsaBaseline(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, SsaConfig config)
    : config_(config), eval_(problem, budget), rng_(seed)
{
}

std::uint64_t SsaBaseline::horizon() const
{
    if (config_.max_iterations != 0)
        return config_.max_iterations;
    const auto per_iter = static_cast<std::uint64_t>(config_.population + 1);
    const auto freq = eval_.change_frequency();
    if (config_.schedule == Schedule::per_environment && freq != 0)
        return iterations_for(freq, per_iter);
    return iterations_for(eval_.budget(), per_iter);
}

void SsaBaseline::offer(const std::vector<double>& x, double f)
{
    if (better(eval_.sense(), f, food_fitness_)) {
        food_ = x;
        food_fitness_ = f;
    }
}

bool SsaBaseline::step()
{
    const Sense sense = eval_.sense();
    if (!initialized_) {
        if (eval_.exhausted())
            return false;
        initialized_ = true;
        food_fitness_ = worst_value(sense);
        positions_.assign(static_cast<std::size_t>(config_.population), {});
        for (auto& x : positions_) {
            x.resize(eval_.dimension());
            for (double& v : x)
                v = rng_.uniform(eval_.lower(), eval_.upper());
            const auto f = eval_(x, rng_);
            if (!f)
                return false;
            if (food_.empty())
                food_ = x;
            offer(x, *f);
        }
        return !eval_.exhausted();
    }
    if (eval_.exhausted())
        return false;

    // Memory re-evaluation of the food source. The dimension may have
    // changed in the middle of the previous sweep, so every position is
    // conformed, not only when the food vector disagrees.
    const bool resized = food_.size() != eval_.dimension();
    eval_.conform(food_, rng_);
    for (auto& x : positions_)
        eval_.conform(x, rng_);
    const auto f = eval_(food_, rng_);
    if (!f)
        return false;
    if (resized || std::abs(*f - food_fitness_) > 1e-12) {
        food_fitness_ = *f;
        if (config_.schedule == Schedule::per_environment)
            l_ = 0;
    }
    // The re-evaluation itself may have triggered a dimension change.
    eval_.conform(food_, rng_);
    for (auto& x : positions_)
        eval_.conform(x, rng_);

    const std::uint64_t max_iter = horizon();
    const double c1 = ssa_leader_coefficient(std::min(l_, max_iter), max_iter);
    const double lo = eval_.lower();
    const double hi = eval_.upper();
    const std::size_t dim = eval_.dimension();
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        auto& x = positions_[i];
        if (i == 0) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double c2 = rng_.uniform01();
                const double c3 = rng_.uniform01();
                x[j] = ssa_leader_update(food_[j], c1, c2, c3 >= 0.5, lo, hi);
            }
        } else {
            for (std::size_t j = 0; j < dim; ++j)
                x[j] = ssa_follower_update(x[j], positions_[i - 1][j]);
        }
        for (double& v : x)
            v = std::clamp(v, lo, hi);
    }
    for (auto& x : positions_) {
        const auto f = eval_(x, rng_);
        if (!f)
            return false;
        offer(x, *f);
    }
    if (l_ < max_iter)
        ++l_;
    return !eval_.exhausted();
}

void PsoConfig::apply_overrides(const Overrides& o)
{
    o.read("population", population);
    o.read("chi", chi);
    o.read("c1", c1);
    o.read("c2", c2);
    o.reject_unused("pso_baseline");
    if (population < 1)
        throw ConfigError("population must be >= 1");
}

PsoBaseline::PsoBaseline(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, PsoConfig config)
    : config_(config), eval_(problem, budget), rng_(seed)
{
}

void PsoBaseline::refresh_gbest()
{
    gbest_ = 0;
    for (std::size_t i = 1; i < pbest_fitness_.size(); ++i) {
        if (better(eval_.sense(), pbest_fitness_[i], pbest_fitness_[gbest_]))
            gbest_ = i;
    }
}

bool PsoBaseline::step()
{
    const Sense sense = eval_.sense();
    const double lo = eval_.lower();
    const double hi = eval_.upper();
    const double vmax = hi - lo;
    const auto n = static_cast<std::size_t>(config_.population);

    if (!initialized_) {
        if (eval_.exhausted())
            return false;
        initialized_ = true;
        const std::size_t dim = eval_.dimension();
        x_.assign(n, std::vector<double>(dim));
        v_.assign(n, std::vector<double>(dim));
        pbest_fitness_.assign(n, worst_value(sense));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                x_[i][j] = rng_.uniform(lo, hi);
                v_[i][j] = (rng_.uniform(lo, hi) - x_[i][j]) / 2.0;
            }
        }
        pbest_ = x_;
        for (std::size_t i = 0; i < n; ++i) {
            const auto f = eval_(x_[i], rng_);
            if (!f)
                break;
            pbest_fitness_[i] = *f;
        }
        refresh_gbest();
        return !eval_.exhausted();
    }
    if (eval_.exhausted())
        return false;

    // Change detection on the global best, then memory re-evaluation.
    // The dimension can change in the middle of any sweep, so sizes are
    // checked on every vector and restored after the re-evaluation too.
    auto conform_swarm = [&] {
        const std::size_t dim = eval_.dimension();
        for (std::size_t i = 0; i < n; ++i) {
            eval_.conform(x_[i], rng_);
            eval_.conform(pbest_[i], rng_);
            v_[i].resize(dim, 0.0);
        }
    };
    bool changed = false;
    std::size_t fresh = n;
    const std::size_t now = eval_.dimension();
    const bool resized = std::any_of(x_.begin(), x_.end(), [now](const auto& x) { return x.size() != now; }) ||
                         std::any_of(pbest_.begin(), pbest_.end(), [now](const auto& x) { return x.size() != now; });
    if (resized) {
        conform_swarm();
        changed = true;
    } else {
        const auto f = eval_(pbest_[gbest_], rng_);
        if (!f)
            return false;
        if (std::abs(*f - pbest_fitness_[gbest_]) > 1e-12) {
            pbest_fitness_[gbest_] = *f;
            fresh = gbest_;
            changed = true;
        }
    }
    if (changed) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == fresh)
                continue;
            const auto f = eval_(pbest_[i], rng_);
            if (!f)
                return false;
            pbest_fitness_[i] = *f;
        }
        refresh_gbest();
    }
    conform_swarm();

    const std::size_t dim = eval_.dimension();
    const auto g = pbest_[gbest_];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double r1 = rng_.uniform01();
            const double r2 = rng_.uniform01();
            double v = config_.chi * v_[i][j] + config_.c1 * r1 * (pbest_[i][j] - x_[i][j]) +
                       config_.c2 * r2 * (g[j] - x_[i][j]);
            v = std::clamp(v, -vmax, vmax);
            v_[i][j] = v;
            x_[i][j] = std::clamp(x_[i][j] + v, lo, hi);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto f = eval_(x_[i], rng_);
        if (!f) {
            refresh_gbest();
            return false;
        }
        if (better(sense, *f, pbest_fitness_[i])) {
            pbest_[i] = x_[i];
            pbest_fitness_[i] = *f;
        }
    }
    refresh_gbest();
    return !eval_.exhausted();
}

} // namespace dynopt::optimizers
