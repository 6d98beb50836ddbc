#include "dynopt/gdbg/change.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dynopt::gdbg {

std::string to_string(ChangeType kind)
{
    return "T" + std::to_string(static_cast<int>(kind));
}

ChangeType parse_change_type(std::string_view text)
{
    if (text.size() == 2 && (text[0] == 'T' || text[0] == 't') && text[1] >= '1' && text[1] <= '7')
        return static_cast<ChangeType>(text[1] - '0');
    throw std::invalid_argument("unknown change type '" + std::string(text) + "'");
}

DynamicParam change_param(DynamicParam p, ChangeType kind, std::uint64_t t, Rng& rng,
                          const ChangeDynamics& dyn)
{
    const double range = p.range();
    switch (kind) {
    case ChangeType::small_step: {
        const double r = rng.uniform(-1.0, 1.0);
        p.value += dyn.small_step * range * r * p.severity;
        break;
    }
    case ChangeType::large_step: {
        const double r = rng.uniform(-1.0, 1.0);
        const double sign = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
        p.value += range * (dyn.small_step * sign + (dyn.large_step - dyn.small_step) * r) * p.severity;
        break;
    }
    case ChangeType::random:
    case ChangeType::random_dimension:
        p.value += rng.normal() * p.severity;
        break;
    case ChangeType::chaotic: {
        const double offset = p.value - p.min;
        p.value = p.min + dyn.chaotic_rate * offset * (1.0 - offset / range);
        break;
    }
    case ChangeType::recurrent:
    case ChangeType::recurrent_noisy: {
        // Reduce t modulo the period so values repeat bit-for-bit.
        const auto period = static_cast<std::uint64_t>(dyn.period);
        const double cycle = static_cast<double>(t % period) / static_cast<double>(period);
        p.value = p.min + range * (std::sin(2.0 * std::numbers::pi * cycle + p.phase) + 1.0) / 2.0;
        if (kind == ChangeType::recurrent_noisy)
            p.value += rng.normal() * dyn.noisy_severity;
        break;
    }
    }
    p.value = std::clamp(p.value, p.min, p.max);
    return p;
}

DimensionState dimension_step(DimensionState s, int min_dim, int max_dim)
{
    int next = s.dimension + s.direction;
    if (next > max_dim || next < min_dim) {
        s.direction = -s.direction;
        next = s.dimension + s.direction;
    }
    if (next == max_dim || next == min_dim)
        s.direction = -s.direction;
    s.dimension = next;
    return s;
}

} // namespace dynopt::gdbg
