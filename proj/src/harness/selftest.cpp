#include "dynopt/harness/selftest.hpp"

#include "dynopt/gdbg/instance.hpp"
#include "dynopt/gdbg/rotation.hpp"
#include "dynopt/harness/metrics.hpp"
#include "dynopt/optimizers/qcsso.hpp"
#include "dynopt/optimizers/qcsso_rules.hpp"
#include "dynopt/optimizers/trajectory.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace dynopt::harness {

namespace {

/// Thrown by `expect` to abort a check with a message.
struct CheckFailure
{
    std::string message;
};

void expect(bool ok, const std::string& what)
{
    if (!ok)
        throw CheckFailure{what};
}

bool close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol;
}

void check_metrics()
{
    const auto m = ErrorMatrix::from_rows({{1, 2}, {3, 0.5}});
    expect(close(average_best(m), 0.75, 1e-15), "average_best");
    expect(close(average_mean(m), 1.625, 1e-15), "average_mean");
    expect(close(average_worst(m), 2.5, 1e-15), "average_worst");
    expect(close(std_dev(ErrorMatrix::from_rows({{0, 2}})), 1.0, 1e-15), "std_dev");

    ErrorMatrix s(1, 1);
    s.samples(0, 0).assign(20, 0.5);
    expect(close(case_score(s), 1.0 / 1.5, 1e-15), "case_score");
    expect(close(overall_score({{"a", 1.0}, {"b", 0.5}}, {{"a", 60.0}, {"b", 40.0}}), 80.0, 1e-12),
           "overall_score");
}

void check_parameter_ranges()
{
    using namespace gdbg;
    for (auto t : {ChangeType::small_step, ChangeType::large_step, ChangeType::random, ChangeType::chaotic, ChangeType::recurrent,
                   ChangeType::recurrent_noisy}) {
        GdbgInstance inst(Problem::f1_10, t, 11);
        for (int k = 0; k < 200; ++k) {
            inst.advance_environment();
            for (const auto& h : inst.peaks().heights)
                expect(h.value >= 10.0 && h.value <= 100.0, "height out of range under " + to_string(t));
            for (const auto& w : inst.peaks().widths)
                expect(w.value >= 1.0 && w.value <= 10.0, "width out of range under " + to_string(t));
        }
    }
}

void check_recurrent_period()
{
    using namespace gdbg;
    GdbgInstance inst(Problem::f1_10, ChangeType::recurrent, 5);
    std::vector<std::vector<std::pair<std::string, double>>> history;
    for (int k = 0; k < 30; ++k) {
        history.push_back(inst.parameter_snapshot());
        inst.advance_environment();
    }
    // Index 0 holds the initial values; the cycle starts at the first change.
    for (std::size_t k = 13; k < history.size(); ++k) {
        const auto& a = history[k];
        const auto& b = history[k - 12];
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].first.rfind("height", 0) == 0 || a[i].first.rfind("width", 0) == 0)
                expect(a[i].second == b[i].second, "T5 value not periodic: " + a[i].first);
        }
    }
}

void check_rotations()
{
    Rng rng(3);
    for (std::size_t n : {2u, 5u, 10u, 15u}) {
        const auto m = gdbg::random_orthogonal(n, rng);
        std::vector<double> y(n), out(n);
        for (double& v : y)
            v = rng.normal();
        gdbg::row_times(y, m, out);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += y[i] * y[i];
            b += out[i] * out[i];
        }
        expect(close(std::sqrt(a), std::sqrt(b), 1e-9), "rotation changed a vector norm");
    }
}

void check_dimension_walk()
{
    using namespace gdbg;
    GdbgInstance inst(Problem::f2, ChangeType::random_dimension, 9);
    bool hit_top = false, hit_bottom = false;
    for (int k = 0; k < 60; ++k) {
        inst.advance_environment();
        const auto d = inst.dimension();
        expect(d >= 5 && d <= 15, "dimension left [5, 15]");
        hit_top = hit_top || d == 15;
        hit_bottom = hit_bottom || d == 5;
    }
    expect(hit_top && hit_bottom, "dimension walk did not reach both bounds");
}

void check_ground_truth()
{
    using namespace gdbg;
    GdbgInstance f1(Problem::f1_10, ChangeType::random, 1);
    for (int k = 0; k < 20; ++k) {
        expect(close(f1.peek(f1.optimum_position()), f1.optimum_value(), 1e-9), "F1 optimum mismatch");
        f1.advance_environment();
    }
    GdbgConfig c;
    c.identity_rotations = true;
    for (auto p : {Problem::f2, Problem::f3, Problem::f4, Problem::f5, Problem::f6}) {
        GdbgInstance inst(p, ChangeType::small_step, 2, c);
        expect(close(inst.peek(inst.optimum_position()), inst.optimum_value(), 1e-6),
               "composition optimum mismatch on " + to_string(p));
    }
}

void check_update_rules()
{
    using namespace optimizers;
    expect(quantum_update(0.3, 1.25, 7.0, -2.0, 0.4, 0.4, true) == 1.25, "quantum anchor");
    expect(close(contraction_expansion(0, 100), 100.0, 1e-12), "B at l = 0");
    expect(contraction_expansion(100, 100) == 0.0, "B at l = L");
    expect(follower_coefficient(100, 100) == 0.0, "C at l = L");
    double w = 0.70;
    for (int k = 0; k < 100000; ++k) {
        w = logistic_step(w, 4.0);
        expect(w > 0.0 && w < 1.0, "logistic orbit left (0, 1)");
    }
}

void check_qcsso_invariants()
{
    using namespace gdbg;
    GdbgConfig c;
    c.change_frequency = 2000;
    GdbgInstance problem(Problem::f2, ChangeType::small_step, 4, c);
    optimizers::Qcsso q(problem, 10000, 8);
    while (q.step()) {
        if (!q.initialized())
            continue;
        double best = q.salps().front().pbest_fitness;
        for (const auto& s : q.salps()) {
            best = std::min(best, s.pbest_fitness);
            for (double v : s.position)
                expect(v >= problem.lower_bound() && v <= problem.upper_bound(), "salp out of bounds");
        }
        expect(q.food_fitness() == best, "food is not the best personal best");
        std::vector<int> seen(q.salps().size(), 0);
        for (const auto& sp : q.subpopulations())
            for (auto i : sp.members)
                ++seen[i];
        for (int n : seen)
            expect(n == 1, "subpopulations are not a partition");
    }
    expect(!q.protected_salp_reset(), "global-best salp was re-initialized");
}

void check_determinism()
{
    using namespace gdbg;
    GdbgConfig c;
    c.change_frequency = 1000;
    auto once = [&] {
        GdbgInstance problem(Problem::f1_10, ChangeType::large_step, 21, c);
        std::ostringstream out;
        optimizers::write_trajectory(optimizers::run("qcsso", problem, 5000, 99), out);
        return out.str();
    };
    expect(once() == once(), "identical seeds gave different trajectories");
}

} // namespace

std::vector<SelftestCheck> run_selftest(std::ostream& log)
{
    const std::pair<const char*, std::function<void()>> checks[] = {
        {"metrics", check_metrics},
        {"parameter_ranges", check_parameter_ranges},
        {"recurrent_period", check_recurrent_period},
        {"rotations", check_rotations},
        {"dimension_walk", check_dimension_walk},
        {"ground_truth", check_ground_truth},
        {"update_rules", check_update_rules},
        {"qcsso_invariants", check_qcsso_invariants},
        {"determinism", check_determinism},
    };
    std::vector<SelftestCheck> results;
    for (const auto& [name, fn] : checks) {
        SelftestCheck r{name, true, {}};
        try {
            fn();
        } catch (const CheckFailure& f) {
            r.passed = false;
            r.detail = f.message;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        log << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.passed)
            log << ": " << r.detail;
        log << '\n';
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace dynopt::harness
