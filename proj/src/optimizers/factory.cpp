#include "dynopt/optimizers/baselines.hpp"
#include "dynopt/optimizers/qcsso.hpp"
#include "dynopt/optimizers/trajectory.hpp"

#include <stdexcept>
#include <string>

namespace dynopt::optimizers {

std::unique_ptr<Optimizer> make_optimizer(std::string_view id, DynamicObjective& problem,
                                          std::uint64_t budget, std::uint64_t seed,
                                          const Overrides& overrides)
{
    if (id == "qcsso") {
        QcssoConfig c;
        c.apply_overrides(overrides);
        return std::make_unique<Qcsso>(problem, budget, seed, c);
    }
    if (id == "ssa_baseline") {
        SsaConfig c;
        c.apply_overrides(overrides);
        return std::make_unique<SsaBaseline>(problem, budget, seed, c);
    }
    if (id == "pso_baseline") {
        PsoConfig c;
        c.apply_overrides(overrides);
        return std::make_unique<PsoBaseline>(problem, budget, seed, c);
    }
    throw std::invalid_argument("unknown optimizer '" + std::string(id) + "'");
}

} // namespace dynopt::optimizers
