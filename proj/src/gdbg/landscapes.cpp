#include "dynopt/gdbg/landscapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynopt::gdbg {

double rotation_peak_eval(const PeakSet& ps, std::span<const double> x)
{
    const double d = static_cast<double>(x.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ps.count(); ++i) {
        const auto& c = ps.centers[i];
        double sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = x[j] - c[j];
            sq += diff * diff;
        }
        const double value = ps.heights[i].value / (1.0 + ps.widths[i].value * std::sqrt(sq / d));
        best = std::max(best, value);
    }
    return best;
}

void CompositionProblem::refresh_scales()
{
    const std::size_t dim = dimension();
    f_max.assign(count(), 0.0);
    std::vector<double> y(dim);
    std::vector<double> z(dim);
    for (std::size_t i = 0; i < count(); ++i) {
        std::fill(y.begin(), y.end(), search_bound / stretch[i]);
        row_times(y, rotations[i], z);
        f_max[i] = std::abs(base_eval(functions[i], z, weierstrass));
        if (f_max[i] < 1e-12)
            throw std::invalid_argument("composition component " + std::to_string(i) +
                                        " has a vanishing normaliser");
    }
}

std::vector<double> composition_weights(const CompositionProblem& cp, std::span<const double> x)
{
    const std::size_t m = cp.count();
    const double d = static_cast<double>(x.size());
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = x[j] - cp.optima[i][j];
            sq += diff * diff;
        }
        w[i] = std::exp(-std::sqrt(sq / (2.0 * d * cp.sigma[i] * cp.sigma[i])));
    }

    const auto top = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    const double damp = 1.0 - std::pow(w[top], 10.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (i != top && w[i] != w[top])
            w[i] *= damp;
    }

    double total = 0.0;
    for (double v : w)
        total += v;
    if (!(total > 0.0)) {
        // Far from every optimum all exponentials underflow; fall back to
        // an even mix.
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(m));
        return w;
    }
    for (double& v : w)
        v /= total;
    return w;
}

double composition_eval(const CompositionProblem& cp, std::span<const double> x)
{
    const std::size_t dim = x.size();
    const auto weights = composition_weights(cp, x);
    std::vector<double> y(dim);
    std::vector<double> z(dim);
    double value = 0.0;
    for (std::size_t i = 0; i < cp.count(); ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            y[j] = (x[j] - cp.optima[i][j]) / cp.stretch[i];
        row_times(y, cp.rotations[i], z);
        const double scaled = cp.normalizer * base_eval(cp.functions[i], z, cp.weierstrass) / cp.f_max[i];
        value += weights[i] * (scaled + cp.heights[i].value);
    }
    return value;
}

} // namespace dynopt::gdbg
