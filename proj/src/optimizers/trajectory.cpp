#include "dynopt/optimizers/trajectory.hpp"

#include "dynopt/core/format.hpp"

#include <algorithm>
#include <cmath>

namespace dynopt::optimizers {

void write_trajectory(const TrajectoryRecord& rec, std::ostream& out)
{
    out << "eval_count,error\n";
    for (std::size_t i = 0; i < rec.errors.size(); ++i)
        out << (i + 1) << ',' << format_roundtrip(rec.errors[i]) << '\n';
    out << "change_index,E_last\n";
    for (std::size_t j = 0; j < rec.e_last.size(); ++j)
        out << j << ',' << format_roundtrip(rec.e_last[j]) << '\n';
}

RecordingObjective::RecordingObjective(DynamicObjective& inner, std::uint64_t window, RecordOptions options)
    : inner_(inner), window_(window), options_(options)
{
    if (options_.samples == 0)
        options_.samples = 1;
    if (window_ != 0) {
        const auto s = static_cast<std::uint64_t>(options_.samples);
        for (std::uint64_t i = 1; i <= s; ++i)
            sample_points_.push_back(std::max<std::uint64_t>(1, (i * window_ + s - 1) / s));
    }
}

double RecordingObjective::ratio(Sense sense, double best, double optimum)
{
    const double r = sense == Sense::minimize ? optimum / best : best / optimum;
    return std::min(r, 1.0);
}

double RecordingObjective::evaluate(std::span<const double> x)
{
    const double optimum = inner_.optimum_value();
    const Sense sense = inner_.sense();
    const double value = inner_.evaluate(x);
    ++count_;
    ++record_.evaluations;
    if (window_ == 0)
        return value;

    const std::uint64_t k = (count_ - 1) % window_ + 1;
    if (k == 1) {
        best_ = value;
        next_sample_ = 0;
        current_samples_.clear();
    } else if (better(sense, value, best_)) {
        best_ = value;
    }

    const double error = std::abs(best_ - optimum);
    if (options_.keep_trace)
        record_.errors.push_back(error);

    while (next_sample_ < sample_points_.size() && sample_points_[next_sample_] == k) {
        current_samples_.push_back(ratio(sense, best_, optimum));
        ++next_sample_;
    }
    if (k == window_) {
        record_.e_last.push_back(error);
        record_.r_last.push_back(ratio(sense, best_, optimum));
        record_.ratio_samples.push_back(std::move(current_samples_));
        current_samples_.clear();
    }
    return value;
}

TrajectoryRecord run(std::string_view id, DynamicObjective& problem, std::uint64_t budget,
                     std::uint64_t seed, const Overrides& overrides, RecordOptions options)
{
    const std::uint64_t window = problem.change_frequency() != 0 ? problem.change_frequency() : budget;
    RecordingObjective recorder(problem, window, options);
    auto optimizer = make_optimizer(id, recorder, budget, seed, overrides);
    while (recorder.evaluations() < budget && optimizer->step()) {
    }
    return recorder.take_record();
}

} // namespace dynopt::optimizers
