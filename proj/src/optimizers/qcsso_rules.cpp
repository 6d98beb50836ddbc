#include "dynopt/optimizers/qcsso_rules.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dynopt::optimizers {

double logistic_step(double w, double d)
{
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("logistic_step: state must lie in (0, 1)");
    return d * w * (1.0 - w);
}

double chaotic_operator(double w, double c4)
{
    return 3.0 * w * (1.0 - w) * c4;
}

double chaotic_operator(double w, Rng& rng)
{
    return chaotic_operator(w, rng.uniform_positive());
}

double contraction_expansion(std::uint64_t l, std::uint64_t max_iter)
{
    if (l >= max_iter)
        return 0.0;
    return 0.5 * static_cast<double>(max_iter - l) / (static_cast<double>(l) + 0.5);
}

double follower_coefficient(std::uint64_t l, std::uint64_t max_iter)
{
    if (l >= max_iter)
        return 0.0;
    const double progress = static_cast<double>(l) / static_cast<double>(max_iter);
    return 0.75 * std::sin(std::numbers::pi / 4.0) * (1.0 - progress);
}

double local_attractor(double x, double food, double r1, double r2)
{
    return (r1 * x + r2 * food) / (r1 + r2);
}

double local_attractor(double x, double food, Rng& rng)
{
    const double r1 = rng.uniform_positive();
    const double r2 = rng.uniform_positive();
    return local_attractor(x, food, r1, r2);
}

double local_attractor_literal(double x, double food, double r1, double r2)
{
    return (r1 * x + r2 * food) / (r1 + r1);
}

std::vector<double> best_mean(std::span<const std::vector<double>> pbests)
{
    if (pbests.empty())
        throw std::invalid_argument("best_mean: empty swarm");
    std::vector<double> mean(pbests.front().size(), 0.0);
    for (const auto& p : pbests) {
        for (std::size_t j = 0; j < mean.size(); ++j)
            mean[j] += p[j];
    }
    const double n = static_cast<double>(pbests.size());
    for (double& m : mean)
        m /= n;
    return mean;
}

double quantum_update(double x, double attractor, double b, double mbest, double r, double u, bool plus)
{
    const double spread = b * std::abs(mbest - x) * std::log(r / u);
    return plus ? attractor + spread : attractor - spread;
}

double follower_update(double x, double x_prev, double x_prev2, double attractor, double c,
                       double momentum)
{
    return x_prev + c * (attractor - x) + momentum * (x_prev - x_prev2);
}

double ssa_leader_coefficient(std::uint64_t l, std::uint64_t max_iter)
{
    const double ratio = max_iter == 0 ? 0.0 : 4.0 * static_cast<double>(l) / static_cast<double>(max_iter);
    return 2.0 * std::exp(-ratio * ratio);
}

double ssa_leader_update(double food, double c1, double c2, bool plus, double lo, double hi)
{
    const double step = c1 * ((hi - lo) * c2 + lo);
    return plus ? food + step : food - step;
}

} // namespace dynopt::optimizers
