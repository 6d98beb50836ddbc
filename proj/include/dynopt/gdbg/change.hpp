#ifndef DYNOPT_GDBG_CHANGE_HPP
#define DYNOPT_GDBG_CHANGE_HPP

#include "dynopt/core/rng.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace dynopt::gdbg {

/// The seven scripted change dynamics T1..T7.
enum class ChangeType {
    small_step = 1,
    large_step,
    random,
    chaotic,
    recurrent,
    recurrent_noisy,
    random_dimension,
};

inline constexpr std::array<ChangeType, 7> all_change_types{
    ChangeType::small_step, ChangeType::large_step,     ChangeType::random,
    ChangeType::chaotic,    ChangeType::recurrent,      ChangeType::recurrent_noisy,
    ChangeType::random_dimension,
};

/// "T1".."T7"
std::string to_string(ChangeType kind);
/// Accepts "T1".."T7"; throws std::invalid_argument otherwise.
ChangeType parse_change_type(std::string_view text);

/// Constants of the change dynamics.
struct ChangeDynamics
{
    double small_step = 0.04;  // alpha
    double large_step = 0.1;   // alpha_max
    double chaotic_rate = 3.67;
    int period = 12;
    double noisy_severity = 0.8;
};

/// A bounded control parameter of the landscape (a height, width or the
/// rotation angle). Invariant: min <= value <= max, max > min.
struct DynamicParam
{
    double value = 0.0;
    double min = 0.0;
    double max = 1.0;
    double severity = 1.0;
    double phase = 0.0; ///< radians, recurrent dynamics only

    double range() const { return max - min; }
};

/// Applies one change of `kind` to `p` for the environment with change
/// index `t` (the index being entered). The result is clamped to [min, max].
/// T7 moves the value like T3; its dimension part lives in the instance.
DynamicParam change_param(DynamicParam p, ChangeType kind, std::uint64_t t, Rng& rng,
                          const ChangeDynamics& dyn = {});

/// Next (dimension, direction) under the random-dimension dynamics. The
/// direction reverses when the bounds are reached.
struct DimensionState
{
    int dimension;
    int direction;
};
DimensionState dimension_step(DimensionState s, int min_dim = 5, int max_dim = 15);

} // namespace dynopt::gdbg

#endif // DYNOPT_GDBG_CHANGE_HPP
