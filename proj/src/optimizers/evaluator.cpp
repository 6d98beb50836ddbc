#include "dynopt/optimizers/optimizer.hpp"

namespace dynopt::optimizers {

std::optional<double> Evaluator::operator()(std::vector<double>& x, Rng& rng)
{
    if (exhausted())
        return std::nullopt;
    conform(x, rng);
    ++used_;
    return problem_.evaluate(x);
}

void Evaluator::conform(std::vector<double>& x, Rng& rng) const
{
    const std::size_t dim = problem_.dimension();
    if (x.size() > dim)
        x.resize(dim);
    while (x.size() < dim)
        x.push_back(rng.uniform(problem_.lower_bound(), problem_.upper_bound()));
}

std::uint64_t iterations_for(std::uint64_t evaluations, std::uint64_t per_iteration)
{
    if (per_iteration == 0)
        return 1;
    const std::uint64_t n = evaluations / per_iteration;
    return n == 0 ? 1 : n;
}

} // namespace dynopt::optimizers
