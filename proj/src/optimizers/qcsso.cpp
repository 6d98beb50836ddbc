#include "dynopt/optimizers/qcsso.hpp"

#include "dynopt/optimizers/qcsso_rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynopt::optimizers {

void QcssoConfig::apply_overrides(const Overrides& o)
{
    o.read("population", population);
    o.read("subpopulations", subpopulations);
    o.read("leaders", leaders);
    o.read("w0", w0);
    std::string mode = w_mode == InertiaMode::fixed ? "fixed" : "chaotic";
    o.read("w_mode", mode);
    if (mode == "fixed")
        w_mode = InertiaMode::fixed;
    else if (mode == "chaotic")
        w_mode = InertiaMode::chaotic;
    else
        throw ConfigError("w_mode must be 'fixed' or 'chaotic'");
    o.read("w_fixed", w_fixed);
    o.read("chaos_rate", chaos_rate);
    o.read("momentum", momentum);
    o.read("c3_threshold", c3_threshold);
    std::string attr = attractor == AttractorMode::convex ? "convex" : "literal";
    o.read("attractor", attr);
    if (attr == "convex")
        attractor = AttractorMode::convex;
    else if (attr == "literal")
        attractor = AttractorMode::literal;
    else
        throw ConfigError("attractor must be 'convex' or 'literal'");
    o.read("max_age", max_age);
    o.read("min_age", min_age);
    o.read("reinit_probability", reinit_probability);
    o.read("aging_keeps_memory", aging_keeps_memory);
    o.read("exclusion_fraction", exclusion_fraction);
    o.read("exclusion_radius", exclusion_radius);
    o.read("probe_fraction", probe_fraction);
    o.read("probe_sigma", probe_sigma);
    std::string sched = schedule == Schedule::per_environment ? "environment" : "run";
    o.read("schedule", sched);
    if (sched == "environment")
        schedule = Schedule::per_environment;
    else if (sched == "run")
        schedule = Schedule::per_run;
    else
        throw ConfigError("schedule must be 'environment' or 'run'");
    o.read("max_iterations", max_iterations);
    o.reject_unused("qcsso");
    validate();
}

void QcssoConfig::validate() const
{
    if (population < 1 || subpopulations < 1 || population % subpopulations != 0)
        throw ConfigError("population must be a positive multiple of subpopulations");
    if (leaders < 1)
        throw ConfigError("leaders must be >= 1");
    if (!(c3_threshold > 0.0 && c3_threshold < 1.0))
        throw ConfigError("c3_threshold must lie in (0, 1)");
    if (min_age < 0 || min_age >= max_age)
        throw ConfigError("min_age must be non-negative and below max_age");
    if (!(w0 > 0.0 && w0 < 1.0) || !(w_fixed > 0.0 && w_fixed < 1.0))
        throw ConfigError("w0 and w_fixed must lie in (0, 1)");
    if (!(chaos_rate > 0.0 && chaos_rate <= 4.0))
        throw ConfigError("chaos_rate must lie in (0, 4]");
    if (reinit_probability < 0.0 || reinit_probability > 1.0)
        throw ConfigError("reinit_probability must lie in [0, 1]");
    if (exclusion_fraction < 0.0 || probe_fraction < 0.0)
        throw ConfigError("exclusion_fraction and probe_fraction must be non-negative");
}

Qcsso::Qcsso(DynamicObjective& problem, std::uint64_t budget, std::uint64_t seed, QcssoConfig config)
    : problem_(problem), config_(config), eval_(problem, budget), rng_(seed), w_state_(config.w0)
{
    config_.validate();
}

double Qcsso::exclusion_radius() const
{
    if (config_.exclusion_radius >= 0.0)
        return config_.exclusion_radius;
    return config_.exclusion_fraction * (eval_.upper() - eval_.lower()) * std::sqrt(static_cast<double>(eval_.dimension()));
}

double Qcsso::probe_sigma() const
{
    if (config_.probe_sigma >= 0.0)
        return config_.probe_sigma;
    return config_.probe_fraction * (eval_.upper() - eval_.lower());
}

std::uint64_t Qcsso::horizon() const
{
    if (config_.max_iterations != 0)
        return config_.max_iterations;
    const auto per_iter = static_cast<std::uint64_t>(config_.population + config_.subpopulations + 1);
    const auto freq = eval_.change_frequency();
    if (config_.schedule == Schedule::per_environment && freq != 0)
        return iterations_for(freq, per_iter);
    const auto pop = static_cast<std::uint64_t>(config_.population);
    return iterations_for(eval_.budget() > pop ? eval_.budget() - pop : 0, per_iter);
}

void Qcsso::initialize()
{
    const auto n = static_cast<std::size_t>(config_.population);
    const auto k = static_cast<std::size_t>(config_.subpopulations);
    const std::size_t chain = n / k;
    const std::size_t dim = eval_.dimension();
    const Sense sense = eval_.sense();

    subpops_.assign(k, {});
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t i = 0; i < chain; ++i)
            subpops_[s].members.push_back(s * chain + i);
        subpops_[s].best = s * chain;
    }

    salps_.assign(n, {});
    for (auto& s : salps_) {
        s.position.resize(dim);
        for (double& v : s.position)
            v = rng_.uniform(eval_.lower(), eval_.upper());
        const auto f = eval_(s.position, rng_);
        s.fitness = f ? *f : worst_value(sense);
        s.pbest_position = s.position;
        s.pbest_fitness = s.fitness;
    }
    refresh_bests();
    context_ = {};
    context_.max_iter = horizon();
    initialized_ = true;
}

void Qcsso::update_pbest(Salp& s)
{
    if (better(eval_.sense(), s.fitness, s.pbest_fitness)) {
        s.pbest_position = s.position;
        s.pbest_fitness = s.fitness;
        s.stagnation = 0;
    } else {
        ++s.stagnation;
    }
}

void Qcsso::refresh_bests()
{
    const Sense sense = eval_.sense();
    food_ = 0;
    for (std::size_t i = 1; i < salps_.size(); ++i) {
        if (better(sense, salps_[i].pbest_fitness, salps_[food_].pbest_fitness))
            food_ = i;
    }
    for (auto& sp : subpops_) {
        sp.best = sp.members.front();
        for (std::size_t i : sp.members) {
            if (better(sense, salps_[i].pbest_fitness, salps_[sp.best].pbest_fitness))
                sp.best = i;
        }
    }
}

void Qcsso::conform_all()
{
    for (auto& s : salps_) {
        eval_.conform(s.position, rng_);
        eval_.conform(s.pbest_position, rng_);
    }
}

bool Qcsso::detect_change()
{
    if (salps_.empty())
        return false;

    // Index whose personal best is already fresh, if any.
    std::size_t fresh = salps_.size();
    // The dimension can change in the middle of any sweep, leaving vectors
    // of mixed sizes behind.
    const std::size_t dim = eval_.dimension();
    const bool resized = std::any_of(salps_.begin(), salps_.end(), [dim](const Salp& s) {
        return s.position.size() != dim || s.pbest_position.size() != dim;
    });
    if (resized) {
        conform_all();
    } else {
        auto& holder = salps_[food_];
        const auto sentinel = eval_(holder.pbest_position, rng_);
        if (!sentinel)
            return false;
        if (std::abs(*sentinel - holder.pbest_fitness) <= 1e-12)
            return false;
        holder.pbest_fitness = *sentinel;
        fresh = food_;
    }

    for (std::size_t i = 0; i < salps_.size(); ++i) {
        if (i == fresh)
            continue;
        const auto f = eval_(salps_[i].pbest_position, rng_);
        if (!f)
            break;
        salps_[i].pbest_fitness = *f;
    }
    refresh_bests();
    return true;
}

void Qcsso::ssa_chain_init()
{
    const std::size_t dim = eval_.dimension();
    const double lo = eval_.lower();
    const double hi = eval_.upper();
    const double c1 = ssa_leader_coefficient(context_.l, context_.max_iter);
    const auto food = food_position();

    for (const auto& sp : subpops_) {
        for (std::size_t p = 0; p < sp.members.size(); ++p) {
            auto& x = salps_[sp.members[p]].position;
            if (p == 0) {
                for (std::size_t j = 0; j < dim; ++j) {
                    const double c2 = rng_.uniform01();
                    const double c3 = rng_.uniform01();
                    x[j] = ssa_leader_update(food[j], c1, c2, c3 >= 0.5, lo, hi);
                }
            } else {
                const auto& prev = salps_[sp.members[p - 1]].position;
                for (std::size_t j = 0; j < dim; ++j)
                    x[j] = ssa_follower_update(x[j], prev[j]);
            }
            for (double& v : x)
                v = std::clamp(v, lo, hi);
        }
    }
}

void Qcsso::quantum_chain_update()
{
    const std::size_t dim = eval_.dimension();
    const double lo = eval_.lower();
    const double hi = eval_.upper();
    const auto food_all = food_position();
    const auto leaders = static_cast<std::size_t>(config_.leaders);

    auto attractor = [&](double x, double f) {
        const double r1 = rng_.uniform_positive();
        const double r2 = rng_.uniform_positive();
        return config_.attractor == AttractorMode::convex ? local_attractor(x, f, r1, r2)
                                                          : local_attractor_literal(x, f, r1, r2);
    };

    for (const auto& sp : subpops_) {
        const auto& food = food_all;
        const auto& mbest = context_.best_mean;
        for (std::size_t p = 0; p < sp.members.size(); ++p) {
            auto& x = salps_[sp.members[p]].position;
            if (p < leaders) {
                for (std::size_t j = 0; j < dim; ++j) {
                    const double a = attractor(x[j], food[j]);
                    const double r = rng_.uniform_positive();
                    const double u = chaotic_operator(context_.w, rng_);
                    const bool plus = rng_.uniform01() > config_.c3_threshold;
                    x[j] = quantum_update(x[j], a, context_.b, mbest[j], r, u, plus);
                }
            } else {
                const auto& prev = salps_[sp.members[p - 1]].position;
                const auto& prev2 = salps_[sp.members[p >= 2 ? p - 2 : p - 1]].position;
                for (std::size_t j = 0; j < dim; ++j) {
                    const double a = attractor(x[j], food[j]);
                    x[j] = follower_update(x[j], prev[j], prev2[j], a, context_.c, config_.momentum);
                }
            }
            for (double& v : x)
                v = std::clamp(v, lo, hi);
        }
    }
}

bool Qcsso::evaluate_positions()
{
    for (auto& s : salps_) {
        const auto f = eval_(s.position, rng_);
        if (!f)
            return false;
        s.fitness = *f;
        update_pbest(s);
    }
    return true;
}

bool Qcsso::reinitialize(std::size_t index, bool keep)
{
    auto& s = salps_[index];
    std::vector<double> x(eval_.dimension());
    for (double& v : x)
        v = rng_.uniform(eval_.lower(), eval_.upper());
    const auto f = eval_(x, rng_);
    if (!f)
        return false;
    if (index == food_)
        protected_reset_ = true;
    s.position = x;
    s.fitness = *f;
    if (!keep || better(eval_.sense(), *f, s.pbest_fitness)) {
        s.pbest_position = std::move(x);
        s.pbest_fitness = *f;
    }
    s.age = 0;
    s.stagnation = 0;
    ++reinits_;
    return true;
}

void Qcsso::overlap_search()
{
    const Sense sense = eval_.sense();
    const double lo = eval_.lower();
    const double hi = eval_.upper();
    const double sigma = probe_sigma();

    // Superposition probe around each subpopulation best.
    for (auto& sp : subpops_) {
        auto& b = salps_[sp.best];
        std::vector<double> y = b.pbest_position;
        for (double& v : y)
            v = std::clamp(v + sigma * rng_.normal(), lo, hi);
        const auto f = eval_(y, rng_);
        if (!f)
            break;
        if (better(sense, *f, b.pbest_fitness)) {
            b.pbest_position = std::move(y);
            b.pbest_fitness = *f;
            b.stagnation = 0;
        }
    }
    refresh_bests();

    // Exclusion between subpopulation bests.
    const double radius = exclusion_radius();
    if (radius <= 0.0)
        return;
    conform_all();
    const std::size_t k = subpops_.size();
    std::vector<bool> reset(k, false);
    auto holds_food = [&](std::size_t s) {
        const auto& m = subpops_[s].members;
        return std::find(m.begin(), m.end(), food_) != m.end();
    };
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (reset[a] || reset[b])
                continue;
            const auto& pa = salps_[subpops_[a].best];
            const auto& pb = salps_[subpops_[b].best];
            double sq = 0.0;
            for (std::size_t j = 0; j < pa.pbest_position.size(); ++j) {
                const double d = pa.pbest_position[j] - pb.pbest_position[j];
                sq += d * d;
            }
            if (std::sqrt(sq) >= radius)
                continue;
            std::size_t worse;
            if (better(sense, pa.pbest_fitness, pb.pbest_fitness))
                worse = b;
            else if (better(sense, pb.pbest_fitness, pa.pbest_fitness))
                worse = a;
            else
                worse = holds_food(b) ? a : b;
            if (holds_food(worse))
                continue;
            reset[worse] = true;
            for (std::size_t i : subpops_[worse].members) {
                if (!reinitialize(i, false))
                    break;
            }
        }
    }
    refresh_bests();
}

void Qcsso::aging_step(const std::function<double()>& draw)
{
    std::vector<bool> local_best(salps_.size(), false);
    for (const auto& sp : subpops_)
        local_best[sp.best] = true;
    const std::size_t protected_index = food_;
    const auto max_age = static_cast<std::uint64_t>(config_.max_age);
    const auto min_age = static_cast<std::uint64_t>(config_.min_age);

    for (std::size_t i = 0; i < salps_.size(); ++i) {
        if (i == protected_index)
            continue;
        auto& s = salps_[i];
        bool reinit = false;
        if (local_best[i])
            reinit = s.age > max_age && draw() < config_.reinit_probability;
        else
            reinit = s.age > min_age && draw() < config_.reinit_probability;
        if (!(reinit && reinitialize(i, config_.aging_keeps_memory)))
            ++s.age;
    }
    refresh_bests();
}

void Qcsso::aging_step()
{
    aging_step([this] { return rng_.uniform01(); });
}

bool Qcsso::step()
{
    if (!initialized_) {
        if (eval_.exhausted())
            return false;
        initialize();
        return !eval_.exhausted();
    }
    if (eval_.exhausted())
        return false;

    if (detect_change() && config_.schedule == Schedule::per_environment)
        context_.l = 0;
    if (eval_.exhausted())
        return false;
    conform_all();

    context_.max_iter = horizon();
    context_.l = std::min(context_.l, context_.max_iter);
    context_.w = config_.w_mode == InertiaMode::fixed ? config_.w_fixed : w_state_;
    context_.b = contraction_expansion(context_.l, context_.max_iter);
    context_.c = follower_coefficient(context_.l, context_.max_iter);
    {
        std::vector<std::vector<double>> pbests;
        pbests.reserve(salps_.size());
        for (const auto& s : salps_)
            pbests.push_back(s.pbest_position);
        context_.best_mean = best_mean(pbests);
    }

    if (context_.l == 0)
        ssa_chain_init();
    else
        quantum_chain_update();

    const bool complete = evaluate_positions();
    refresh_bests();
    if (!complete)
        return false;

    overlap_search();
    aging_step();

    if (config_.w_mode == InertiaMode::chaotic)
        w_state_ = logistic_step(w_state_, config_.chaos_rate);
    if (context_.l < context_.max_iter)
        ++context_.l;
    return !eval_.exhausted();
}

} // namespace dynopt::optimizers
