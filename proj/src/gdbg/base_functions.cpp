#include "dynopt/gdbg/base_functions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace dynopt::gdbg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::string to_string(BaseFunction f)
{
    switch (f) {
    case BaseFunction::sphere: return "sphere";
    case BaseFunction::rastrigin: return "rastrigin";
    case BaseFunction::weierstrass: return "weierstrass";
    case BaseFunction::griewank: return "griewank";
    case BaseFunction::ackley: return "ackley";
    }
    return "?";
}

double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

double rastrigin(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v - 10.0 * std::cos(two_pi * v) + 10.0;
    return s;
}

double weierstrass(std::span<const double> x, const WeierstrassParams& p)
{
    std::vector<double> amp(static_cast<std::size_t>(p.k_max + 1));
    std::vector<double> freq(amp.size());
    double offset = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        amp[k] = std::pow(p.a, static_cast<double>(k));
        freq[k] = std::pow(p.b, static_cast<double>(k));
        offset += amp[k] * std::cos(std::numbers::pi * freq[k]);
    }

    double s = 0.0;
    for (double v : x) {
        for (std::size_t k = 0; k < amp.size(); ++k)
            s += amp[k] * std::cos(two_pi * freq[k] * (v + 0.5));
    }
    return s - static_cast<double>(x.size()) * offset;
}

double griewank(std::span<const double> x)
{
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double ackley(std::span<const double> x)
{
    if (x.empty())
        return 0.0;
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(two_pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double base_eval(BaseFunction f, std::span<const double> x, const WeierstrassParams& p)
{
    switch (f) {
    case BaseFunction::sphere: return sphere(x);
    case BaseFunction::rastrigin: return rastrigin(x);
    case BaseFunction::weierstrass: return weierstrass(x, p);
    case BaseFunction::griewank: return griewank(x);
    case BaseFunction::ackley: return ackley(x);
    }
    return 0.0;
}

double default_stretch(BaseFunction f)
{
    switch (f) {
    case BaseFunction::sphere: return 0.05;
    case BaseFunction::rastrigin: return 1.0;
    case BaseFunction::weierstrass: return 10.0;
    case BaseFunction::griewank: return 0.05;
    case BaseFunction::ackley: return 5.0 / 32.0;
    }
    return 1.0;
}

} // namespace dynopt::gdbg
