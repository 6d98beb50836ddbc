#ifndef DYNOPT_CORE_OBJECTIVE_HPP
#define DYNOPT_CORE_OBJECTIVE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>

namespace dynopt {

enum class Sense { minimize, maximize };

/// True when `a` is strictly better than `b` under `sense`.
inline bool better(Sense sense, double a, double b)
{
    return sense == Sense::minimize ? a < b : a > b;
}

/// The worst representable fitness under `sense`.
inline double worst_value(Sense sense)
{
    return sense == Sense::minimize ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
}

/// A box-bounded objective whose landscape may change while it is being
/// evaluated. Implementations own their evaluation counter; a change of
/// environment happens inside evaluate() once every change_frequency()
/// calls, after the value for the current call has been computed.
class DynamicObjective
{
public:
    virtual ~DynamicObjective() = default;

    /// Throws std::invalid_argument when x.size() != dimension().
    virtual double evaluate(std::span<const double> x) = 0;

    virtual std::size_t dimension() const = 0;
    virtual double lower_bound() const = 0;
    virtual double upper_bound() const = 0;
    virtual Sense sense() const = 0;

    /// Best attainable value in the current environment.
    virtual double optimum_value() const = 0;

    virtual std::uint64_t evaluations() const = 0;

    /// Evaluations per environment; 0 for a static problem.
    virtual std::uint64_t change_frequency() const = 0;
};

/// Static wrapper around a plain function (used for sanity checks).
class StaticObjective final : public DynamicObjective
{
public:
    using Function = std::function<double(std::span<const double>)>;

    StaticObjective(Function f, std::size_t dim, double lo, double hi, double optimum = 0.0,
                    Sense sense = Sense::minimize);

    double evaluate(std::span<const double> x) override;
    std::size_t dimension() const override { return dim_; }
    double lower_bound() const override { return lo_; }
    double upper_bound() const override { return hi_; }
    Sense sense() const override { return sense_; }
    double optimum_value() const override { return optimum_; }
    std::uint64_t evaluations() const override { return evaluations_; }
    std::uint64_t change_frequency() const override { return 0; }

private:
    Function f_;
    std::size_t dim_;
    double lo_;
    double hi_;
    double optimum_;
    Sense sense_;
    std::uint64_t evaluations_ = 0;
};

} // namespace dynopt

#endif // DYNOPT_CORE_OBJECTIVE_HPP
