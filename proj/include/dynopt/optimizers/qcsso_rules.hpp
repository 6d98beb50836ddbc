#ifndef DYNOPT_OPTIMIZERS_QCSSO_RULES_HPP
#define DYNOPT_OPTIMIZERS_QCSSO_RULES_HPP

#include "dynopt/core/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

/// Scalar update rules of the quantum-inspired chaotic salp swarm.
///
/// Each rule is a pure function of its inputs; the overloads taking an Rng
/// draw the random factors (all from (0, 1]) and forward to the pure form,
/// so tests can pin every draw.
namespace dynopt::optimizers {

/// w' = d * w * (1 - w). Throws std::invalid_argument unless 0 < w < 1.
double logistic_step(double w, double d = 4.0);

/// u = 3 * w * (1 - w) * c4, the chaotic factor inside the logarithm.
double chaotic_operator(double w, double c4);
double chaotic_operator(double w, Rng& rng);

/// B_l = 0.5 * (L - l) / (l + 0.5).
double contraction_expansion(std::uint64_t l, std::uint64_t max_iter);

/// C = 0.75 * sin(pi/4) * (1 - l/L).
double follower_coefficient(std::uint64_t l, std::uint64_t max_iter);

/// A = (r1*x + r2*food) / (r1 + r2), a point between x and food.
double local_attractor(double x, double food, double r1, double r2);
double local_attractor(double x, double food, Rng& rng);

/// Literal printed form (r1*x + r2*food) / (2*r1); not a convex
/// combination, kept for comparison runs only.
double local_attractor_literal(double x, double food, double r1, double r2);

/// Componentwise mean of the given personal-best positions.
std::vector<double> best_mean(std::span<const std::vector<double>> pbests);

/// A +/- B * |mbest - x| * ln(r / u); `plus` selects the sign.
double quantum_update(double x, double attractor, double b, double mbest, double r, double u, bool plus);

/// x_prev + C*(A - x) + m*(x_prev - x_prev2).
double follower_update(double x, double x_prev, double x_prev2, double attractor, double c,
                       double momentum);

/// c1 = 2 * exp(-(4l/L)^2) of the standard salp leader rule.
double ssa_leader_coefficient(std::uint64_t l, std::uint64_t max_iter);

/// food +/- c1 * ((hi - lo) * c2 + lo); `plus` when the sign draw >= 0.5.
double ssa_leader_update(double food, double c1, double c2, bool plus, double lo, double hi);

/// (x + x_prev) / 2.
inline double ssa_follower_update(double x, double x_prev) { return (x + x_prev) / 2.0; }

} // namespace dynopt::optimizers

#endif // DYNOPT_OPTIMIZERS_QCSSO_RULES_HPP
