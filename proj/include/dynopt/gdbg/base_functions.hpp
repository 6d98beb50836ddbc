#ifndef DYNOPT_GDBG_BASE_FUNCTIONS_HPP
#define DYNOPT_GDBG_BASE_FUNCTIONS_HPP

#include <span>
#include <string>
#include <string_view>

namespace dynopt::gdbg {

/// Basic landscapes used as composition components. All have f(0) = 0.
enum class BaseFunction { sphere, rastrigin, weierstrass, griewank, ackley };

std::string to_string(BaseFunction f);

/// Weierstrass series constants.
struct WeierstrassParams
{
    double a = 0.5;
    double b = 3.0;
    int k_max = 20;
};

double sphere(std::span<const double> x);
double rastrigin(std::span<const double> x);
double weierstrass(std::span<const double> x, const WeierstrassParams& p = {});
double griewank(std::span<const double> x);
double ackley(std::span<const double> x);

double base_eval(BaseFunction f, std::span<const double> x, const WeierstrassParams& p = {});

/// Stretch factor that maps [-5, 5] onto the function's natural range.
double default_stretch(BaseFunction f);

} // namespace dynopt::gdbg

#endif // DYNOPT_GDBG_BASE_FUNCTIONS_HPP
