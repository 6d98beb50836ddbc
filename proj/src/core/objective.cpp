#include "dynopt/core/objective.hpp"

#include <stdexcept>
#include <string>

namespace dynopt {

StaticObjective::StaticObjective(Function f, std::size_t dim, double lo, double hi, double optimum,
                                 Sense sense)
    : f_(std::move(f)), dim_(dim), lo_(lo), hi_(hi), optimum_(optimum), sense_(sense)
{
    if (dim_ == 0 || !(lo_ < hi_))
        throw std::invalid_argument("StaticObjective: empty search box");
}

double StaticObjective::evaluate(std::span<const double> x)
{
    if (x.size() != dim_)
        throw std::invalid_argument("dimension mismatch: expected " + std::to_string(dim_) +
                                    ", got " + std::to_string(x.size()));
    ++evaluations_;
    return f_(x);
}

} // namespace dynopt
