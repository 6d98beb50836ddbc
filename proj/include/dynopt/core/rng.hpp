#ifndef DYNOPT_CORE_RNG_HPP
#define DYNOPT_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace dynopt {

/// Seeded random source shared by problems and optimizers.
///
/// Every stochastic component owns exactly one Rng, so a seed fully
/// determines its stream. Draws go through the std distributions on a
/// 64-bit Mersenne twister.
class Rng
{
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() { return unit_(engine_); }

    /// Uniform in (0, 1]; never returns zero.
    double uniform_positive()
    {
        double u = 0.0;
        while (u <= 0.0)
            u = 1.0 - unit_(engine_);
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

    double normal() { return normal_(engine_); }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n)
    {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over the bytes of a label; stable across platforms and builds.
constexpr std::uint64_t stable_hash(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed for a named sub-stream: base xor hash(label), then mixed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view label)
{
    return mix64(base ^ stable_hash(label));
}

} // namespace dynopt

#endif // DYNOPT_CORE_RNG_HPP
