#include "dynopt/gdbg/instance.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace dynopt::gdbg {

std::string to_string(Problem p)
{
    switch (p) {
    case Problem::f1_10: return "F1_10";
    case Problem::f1_50: return "F1_50";
    case Problem::f2: return "F2";
    case Problem::f3: return "F3";
    case Problem::f4: return "F4";
    case Problem::f5: return "F5";
    case Problem::f6: return "F6";
    }
    return "?";
}

std::string display_name(Problem p)
{
    switch (p) {
    case Problem::f1_10: return "F1(10)";
    case Problem::f1_50: return "F1(50)";
    default: return to_string(p);
    }
}

Problem parse_problem(std::string_view text)
{
    for (Problem p : all_problems) {
        if (text == to_string(p) || text == display_name(p))
            return p;
    }
    throw std::invalid_argument("unknown function '" + std::string(text) + "'");
}

void GdbgConfig::apply_overrides(const Overrides& o)
{
    o.read("dimension", dimension);
    o.read("min_dimension", min_dimension);
    o.read("max_dimension", max_dimension);
    o.read("search_bound", search_bound);
    o.read("height_min", height_min);
    o.read("height_max", height_max);
    o.read("height_init", height_init);
    o.read("height_severity", height_severity);
    o.read("width_min", width_min);
    o.read("width_max", width_max);
    o.read("width_init", width_init);
    o.read("width_severity", width_severity);
    o.read("angle_min", angle_min);
    o.read("angle_max", angle_max);
    o.read("angle_init", angle_init);
    o.read("angle_severity", angle_severity);
    o.read("small_step", dynamics.small_step);
    o.read("large_step", dynamics.large_step);
    o.read("chaotic_rate", dynamics.chaotic_rate);
    o.read("period", dynamics.period);
    o.read("noisy_severity", dynamics.noisy_severity);
    o.read("peaks", peaks);
    o.read("components", components);
    o.read("sigma", sigma);
    o.read("normalizer", normalizer);
    o.read("identity_rotations", identity_rotations);
    o.read("random_phase", random_phase);
    o.read("weierstrass_a", weierstrass.a);
    o.read("weierstrass_b", weierstrass.b);
    o.read("weierstrass_k_max", weierstrass.k_max);
    o.read("change_frequency", change_frequency);
    o.reject_unused("benchmark");
}

namespace {

void validate(const GdbgConfig& c)
{
    if (c.min_dimension < 1 || c.min_dimension >= c.max_dimension)
        throw ConfigError("dimension bounds must satisfy 1 <= min_dimension < max_dimension");
    if (c.dimension < c.min_dimension || c.dimension > c.max_dimension)
        throw ConfigError("dimension outside [min_dimension, max_dimension]");
    if (!(c.search_bound > 0.0))
        throw ConfigError("search_bound must be positive");
    auto check_param = [](const char* name, double lo, double hi, double init) {
        if (!(lo < hi) || init < lo || init > hi)
            throw ConfigError(std::string(name) + " range must satisfy min < max and min <= init <= max");
    };
    check_param("height", c.height_min, c.height_max, c.height_init);
    check_param("width", c.width_min, c.width_max, c.width_init);
    check_param("angle", c.angle_min, c.angle_max, c.angle_init);
    if (!(c.height_min > 0.0))
        throw ConfigError("height_min must be positive");
    if (c.dynamics.period < 1)
        throw ConfigError("period must be >= 1");
    if (c.components < 1 || c.peaks < 0)
        throw ConfigError("component and peak counts must be positive");
    if (!(c.sigma > 0.0))
        throw ConfigError("sigma must be positive");
}

BaseFunction component_function(Problem p, std::size_t i)
{
    static constexpr std::array<BaseFunction, 5> hybrid{
        BaseFunction::sphere, BaseFunction::rastrigin, BaseFunction::weierstrass,
        BaseFunction::griewank, BaseFunction::ackley,
    };
    switch (p) {
    case Problem::f2: return BaseFunction::sphere;
    case Problem::f3: return BaseFunction::rastrigin;
    case Problem::f4: return BaseFunction::griewank;
    case Problem::f5: return BaseFunction::ackley;
    default: return hybrid[(i / 2) % hybrid.size()];
    }
}

} // namespace

DynamicParam GdbgInstance::make_param(double init, double lo, double hi, double severity)
{
    DynamicParam p{init, lo, hi, severity, 0.0};
    if (config_.random_phase)
        p.phase = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    return p;
}

GdbgInstance::GdbgInstance(Problem problem, ChangeType change, std::uint64_t seed, const Overrides& overrides)
    : GdbgInstance(problem, change, seed, [&] {
          GdbgConfig c;
          c.apply_overrides(overrides);
          return c;
      }())
{
}

GdbgInstance::GdbgInstance(Problem problem, ChangeType change, std::uint64_t seed, GdbgConfig config)
    : problem_(problem), change_(change), config_(config), rng_(seed),
      dims_{config.dimension, 1}
{
    validate(config_);
    frequency_ = config_.change_frequency != 0
                     ? config_.change_frequency
                     : 10000ULL * static_cast<std::uint64_t>(config_.dimension);
    if (dims_.dimension == config_.max_dimension)
        dims_.direction = -1;

    const auto dim = static_cast<std::size_t>(config_.dimension);
    const double b = config_.search_bound;
    angle_ = make_param(config_.angle_init, config_.angle_min, config_.angle_max, config_.angle_severity);

    auto random_point = [&] {
        std::vector<double> v(dim);
        for (double& x : v)
            x = rng_.uniform(-b, b);
        return v;
    };

    if (problem == Problem::f1_10 || problem == Problem::f1_50) {
        const int m = config_.peaks != 0 ? config_.peaks : (problem == Problem::f1_10 ? 10 : 50);
        PeakSet ps;
        for (int i = 0; i < m; ++i) {
            ps.centers.push_back(random_point());
            ps.heights.push_back(make_param(config_.height_init, config_.height_min, config_.height_max,
                                            config_.height_severity));
            ps.widths.push_back(make_param(config_.width_init, config_.width_min, config_.width_max,
                                           config_.width_severity));
        }
        payload_ = std::move(ps);
    } else {
        CompositionProblem cp;
        cp.normalizer = config_.normalizer;
        cp.search_bound = b;
        cp.weierstrass = config_.weierstrass;
        for (int i = 0; i < config_.components; ++i) {
            const auto f = component_function(problem, static_cast<std::size_t>(i));
            cp.functions.push_back(f);
            cp.stretch.push_back(default_stretch(f));
            cp.sigma.push_back(config_.sigma);
            cp.optima.push_back(random_point());
            cp.heights.push_back(make_param(config_.height_init, config_.height_min, config_.height_max,
                                            config_.height_severity));
            cp.rotations.push_back(config_.identity_rotations ? Matrix::identity(dim)
                                                              : random_orthogonal(dim, rng_));
        }
        cp.refresh_scales();
        payload_ = std::move(cp);
    }
}

Sense GdbgInstance::sense() const
{
    return is_peak_problem() ? Sense::maximize : Sense::minimize;
}

std::vector<DynamicParam>& GdbgInstance::heights()
{
    return is_peak_problem() ? std::get<PeakSet>(payload_).heights
                             : std::get<CompositionProblem>(payload_).heights;
}

const std::vector<DynamicParam>& GdbgInstance::heights() const
{
    return is_peak_problem() ? peaks().heights : composition().heights;
}

std::vector<std::vector<double>>& GdbgInstance::positions()
{
    return is_peak_problem() ? std::get<PeakSet>(payload_).centers
                             : std::get<CompositionProblem>(payload_).optima;
}

double GdbgInstance::optimum_value() const
{
    const auto& h = heights();
    auto cmp = [](const DynamicParam& a, const DynamicParam& b) { return a.value < b.value; };
    return is_peak_problem() ? std::max_element(h.begin(), h.end(), cmp)->value
                             : std::min_element(h.begin(), h.end(), cmp)->value;
}

std::vector<double> GdbgInstance::optimum_position() const
{
    const auto& h = heights();
    auto cmp = [](const DynamicParam& a, const DynamicParam& b) { return a.value < b.value; };
    const auto it = is_peak_problem() ? std::max_element(h.begin(), h.end(), cmp)
                                      : std::min_element(h.begin(), h.end(), cmp);
    const auto idx = static_cast<std::size_t>(it - h.begin());
    return is_peak_problem() ? peaks().centers[idx] : composition().optima[idx];
}

double GdbgInstance::peek(std::span<const double> x) const
{
    if (x.size() != dimension())
        throw std::invalid_argument("dimension mismatch: expected " + std::to_string(dimension()) +
                                    ", got " + std::to_string(x.size()));
    return is_peak_problem() ? rotation_peak_eval(peaks(), x) : composition_eval(composition(), x);
}

double GdbgInstance::evaluate(std::span<const double> x)
{
    const double value = peek(x);
    ++evaluations_;
    if (frequency_ != 0 && evaluations_ % frequency_ == 0)
        advance_environment();
    return value;
}

void GdbgInstance::advance_environment()
{
    ++t_;
    const auto& dyn = config_.dynamics;

    for (auto& h : heights())
        h = change_param(h, change_, t_, rng_, dyn);
    if (is_peak_problem()) {
        for (auto& w : std::get<PeakSet>(payload_).widths)
            w = change_param(w, change_, t_, rng_, dyn);
    }

    angle_ = change_param(angle_, change_, t_, rng_, dyn);
    const auto pairs = random_pairing(dimension(), rng_);
    const double b = config_.search_bound;
    for (auto& p : positions()) {
        rotate_pairs(p, pairs, angle_.value);
        for (double& v : p)
            v = std::clamp(v, -b, b);
    }

    if (change_ == ChangeType::random_dimension) {
        const auto next = dimension_step(dims_, config_.min_dimension, config_.max_dimension);
        change_dimension(next.dimension);
        dims_ = next;
    }
}

void GdbgInstance::change_dimension(int new_dim)
{
    const auto dim = static_cast<std::size_t>(new_dim);
    const double b = config_.search_bound;
    for (auto& p : positions()) {
        while (p.size() < dim)
            p.push_back(rng_.uniform(-b, b));
        p.resize(dim);
    }
    if (!is_peak_problem()) {
        auto& cp = std::get<CompositionProblem>(payload_);
        for (auto& m : cp.rotations)
            m = config_.identity_rotations ? Matrix::identity(dim) : random_orthogonal(dim, rng_);
        cp.refresh_scales();
    }
}

std::vector<std::pair<std::string, double>> GdbgInstance::parameter_snapshot() const
{
    std::vector<std::pair<std::string, double>> out;
    out.emplace_back("dimension", static_cast<double>(dimension()));
    out.emplace_back("angle", angle_.value);
    const auto& h = heights();
    for (std::size_t i = 0; i < h.size(); ++i)
        out.emplace_back("height[" + std::to_string(i) + "]", h[i].value);
    if (is_peak_problem()) {
        const auto& w = peaks().widths;
        for (std::size_t i = 0; i < w.size(); ++i)
            out.emplace_back("width[" + std::to_string(i) + "]", w[i].value);
    }
    out.emplace_back("optimum", optimum_value());
    return out;
}

} // namespace dynopt::gdbg
