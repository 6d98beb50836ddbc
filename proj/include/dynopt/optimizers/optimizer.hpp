#ifndef DYNOPT_OPTIMIZERS_OPTIMIZER_HPP
#define DYNOPT_OPTIMIZERS_OPTIMIZER_HPP

#include "dynopt/core/objective.hpp"
#include "dynopt/core/rng.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace dynopt::optimizers {

/// Budget-limited access to a problem.
///
/// Every objective call of an optimizer goes through here. A vector whose
/// length no longer matches the problem dimension (after a dimension
/// change) is conformed first: extra coordinates are dropped, missing ones
/// drawn uniformly in the box.
class Evaluator
{
public:
    Evaluator(DynamicObjective& problem, std::uint64_t budget) : problem_(problem), budget_(budget) {}

    /// nullopt once the budget is spent; nothing is evaluated then.
    std::optional<double> operator()(std::vector<double>& x, Rng& rng);

    void conform(std::vector<double>& x, Rng& rng) const;

    bool exhausted() const { return used_ >= budget_; }
    std::uint64_t used() const { return used_; }
    std::uint64_t remaining() const { return budget_ - used_; }
    std::uint64_t budget() const { return budget_; }

    std::size_t dimension() const { return problem_.dimension(); }
    double lower() const { return problem_.lower_bound(); }
    double upper() const { return problem_.upper_bound(); }
    Sense sense() const { return problem_.sense(); }
    std::uint64_t change_frequency() const { return problem_.change_frequency(); }

private:
    DynamicObjective& problem_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

/// Common driver interface of all optimizers.
class Optimizer
{
public:
    virtual ~Optimizer() = default;

    virtual std::string_view name() const = 0;

    /// Performs one iteration (the first call initializes the swarm).
    /// Returns false once the evaluation budget is exhausted.
    virtual bool step() = 0;

    virtual std::uint64_t evaluations_used() const = 0;
};

/// Iterations that fit in `evaluations` at `per_iteration` calls each (>= 1).
std::uint64_t iterations_for(std::uint64_t evaluations, std::uint64_t per_iteration);

} // namespace dynopt::optimizers

#endif // DYNOPT_OPTIMIZERS_OPTIMIZER_HPP
