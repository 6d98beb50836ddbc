#ifndef DYNOPT_GDBG_LANDSCAPES_HPP
#define DYNOPT_GDBG_LANDSCAPES_HPP

#include "dynopt/gdbg/base_functions.hpp"
#include "dynopt/gdbg/change.hpp"
#include "dynopt/gdbg/rotation.hpp"

#include <span>
#include <vector>

namespace dynopt::gdbg {

/// Peaks of the rotation-peak landscape (maximisation).
struct PeakSet
{
    std::vector<std::vector<double>> centers; ///< m x D
    std::vector<DynamicParam> heights;
    std::vector<DynamicParam> widths;

    std::size_t count() const { return centers.size(); }
};

/// F(x) = max_i H_i / (1 + W_i * sqrt(mean_j (x_j - c_ij)^2)).
double rotation_peak_eval(const PeakSet& ps, std::span<const double> x);

/// Weighted composition of rotated, stretched base functions (minimisation).
struct CompositionProblem
{
    std::vector<std::vector<double>> optima; ///< m x D
    std::vector<Matrix> rotations;
    std::vector<DynamicParam> heights;
    std::vector<double> stretch;
    std::vector<double> sigma;
    std::vector<BaseFunction> functions;
    double normalizer = 2000.0;
    double search_bound = 5.0;
    WeierstrassParams weierstrass{};

    /// |f_i((x_max / lambda_i) * M_i)| per component; see refresh_scales().
    std::vector<double> f_max;

    std::size_t count() const { return optima.size(); }
    std::size_t dimension() const { return optima.empty() ? 0 : optima.front().size(); }

    /// Recomputes f_max after rotations or dimension changed. Throws
    /// std::invalid_argument if any |f_max_i| < 1e-12.
    void refresh_scales();
};

/// Normalised mixing weights of the components at x; they sum to 1.
std::vector<double> composition_weights(const CompositionProblem& cp, std::span<const double> x);

double composition_eval(const CompositionProblem& cp, std::span<const double> x);

} // namespace dynopt::gdbg

#endif // DYNOPT_GDBG_LANDSCAPES_HPP
