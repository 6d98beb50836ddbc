#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynopt/core/format.hpp"
#include "dynopt/harness/csv_export.hpp"
#include "dynopt/harness/experiment.hpp"
#include "dynopt/harness/metrics.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace dynopt;
using namespace dynopt::harness;
namespace fs = std::filesystem;

namespace {

/// Fresh empty directory under the system temp dir.
fs::path scratch_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("dynopt_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ErrorMatrix random_matrix(std::mt19937_64& gen, std::size_t runs, std::size_t changes, std::size_t samples)
{
    std::uniform_real_distribution<double> err(0.0, 100.0);
    std::uniform_real_distribution<double> ratio(1e-6, 1.0);
    ErrorMatrix m(runs, changes);
    for (std::size_t i = 0; i < runs; ++i) {
        for (std::size_t j = 0; j < changes; ++j) {
            m.e_last(i, j) = err(gen);
            m.r_last(i, j) = ratio(gen);
            for (std::size_t s = 0; s < samples; ++s)
                m.samples(i, j).push_back(ratio(gen));
        }
    }
    return m;
}

/// Landscape ignoring x: every call of window j in a run returns
/// 1 + level + j, so E_last = level + j with optimum 1.
class FlatObjective final : public DynamicObjective
{
public:
    FlatObjective(double level, std::uint64_t freq) : level_(level), freq_(freq) {}
    double evaluate(std::span<const double> x) override
    {
        if (x.size() != 2)
            throw std::invalid_argument("dimension");
        const double v = 1.0 + level_ + static_cast<double>(count_ / freq_);
        ++count_;
        return v;
    }
    std::size_t dimension() const override { return 2; }
    double lower_bound() const override { return -1.0; }
    double upper_bound() const override { return 1.0; }
    Sense sense() const override { return Sense::minimize; }
    double optimum_value() const override { return 1.0; }
    std::uint64_t evaluations() const override { return count_; }
    std::uint64_t change_frequency() const override { return freq_; }

private:
    double level_;
    std::uint64_t freq_;
    std::uint64_t count_ = 0;
};

double level_for(std::uint64_t seed)
{
    return static_cast<double>(seed % 13);
}

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.runs = 2;
    c.num_change = 2;
    c.change_frequency = 600;
    c.samples = 5;
    c.seed = 17;
    c.cases = {{gdbg::Problem::f1_10, gdbg::ChangeType::small_step}, {gdbg::Problem::f4, gdbg::ChangeType::chaotic}};
    c.optimizers = {"qcsso", "pso_baseline"};
    return c;
}

} // namespace

TEST_CASE("statistics: hand-evaluated examples")
{
    const auto m = ErrorMatrix::from_rows({{1, 2}, {3, 0.5}});
    CHECK(average_best(m) == 0.75);
    CHECK(average_mean(m) == 1.625);
    CHECK(average_worst(m) == 2.5);
    CHECK(std_dev(ErrorMatrix::from_rows({{0, 2}})) == 1.0);

    const auto zeros = ErrorMatrix::from_rows({{0, 0, 0}, {0, 0, 0}});
    CHECK(average_best(zeros) == 0.0);
    CHECK(average_mean(zeros) == 0.0);
    CHECK(average_worst(zeros) == 0.0);
    CHECK(std_dev(zeros) == 0.0);

    const auto single = ErrorMatrix::from_rows({{4.5}});
    CHECK(average_best(single) == 4.5);
    CHECK(average_mean(single) == 4.5);
    CHECK(average_worst(single) == 4.5);
    CHECK(std_dev(single) == 0.0);

    const auto same = ErrorMatrix::from_rows({{3, 3}, {3, 3}});
    CHECK(average_mean(same) == 3.0);
    CHECK(std_dev(same) == 0.0);

    const ErrorMatrix empty;
    CHECK_THROWS_AS(average_best(empty), std::invalid_argument);
    CHECK_THROWS_AS(average_mean(empty), std::invalid_argument);
    CHECK_THROWS_AS(average_worst(empty), std::invalid_argument);
    CHECK_THROWS_AS(std_dev(empty), std::invalid_argument);
    CHECK_THROWS_AS(case_score(empty), std::invalid_argument);
}

TEST_CASE("statistics: brute-force oracle and order on random matrices")
{
    std::mt19937_64 gen(123);
    std::uniform_int_distribution<std::size_t> runs(1, 50), changes(1, 60);
    for (int k = 0; k < 200; ++k) {
        const auto m = random_matrix(gen, runs(gen), changes(gen), 0);
        double best = 0, worst = 0, sum = 0;
        for (std::size_t i = 0; i < m.runs(); ++i) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t j = 0; j < m.changes(); ++j) {
                lo = std::min(lo, m.e_last(i, j));
                hi = std::max(hi, m.e_last(i, j));
                sum += m.e_last(i, j);
            }
            best += lo;
            worst += hi;
        }
        const double n = static_cast<double>(m.runs() * m.changes());
        const double mean = sum / n;
        double var = 0;
        for (std::size_t i = 0; i < m.runs(); ++i)
            for (std::size_t j = 0; j < m.changes(); ++j)
                var += (m.e_last(i, j) - mean) * (m.e_last(i, j) - mean);
        CHECK(std::abs(average_best(m) - best / static_cast<double>(m.runs())) < 1e-12);
        CHECK(std::abs(average_worst(m) - worst / static_cast<double>(m.runs())) < 1e-12);
        CHECK(std::abs(average_mean(m) - mean) < 1e-12);
        CHECK(std::abs(std_dev(m) - std::sqrt(var / n)) < 1e-12);
        CHECK(average_best(m) <= average_mean(m));
        CHECK(average_mean(m) <= average_worst(m));
    }
}

TEST_CASE("case score: examples and validation")
{
    ErrorMatrix perfect(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            perfect.samples(i, j).assign(20, 1.0);
    CHECK(case_score(perfect) == 1.0);

    ErrorMatrix half(1, 1);
    half.samples(0, 0).assign(20, 0.5);
    CHECK(case_score(half) == doctest::Approx(1.0 / 1.5).epsilon(1e-15));

    ErrorMatrix tiny(1, 1);
    tiny.r_last(0, 0) = 1e-12;
    tiny.samples(0, 0).assign(20, 1e-12);
    CHECK(case_score(tiny) < 1e-11);

    ErrorMatrix bad(1, 1);
    bad.r_last(0, 0) = 0.0;
    CHECK_THROWS_AS(case_score(bad), std::invalid_argument);
    bad.r_last(0, 0) = 1.0;
    bad.samples(0, 0) = {0.5, 1.5};
    CHECK_THROWS_AS(case_score(bad), std::invalid_argument);
}

TEST_CASE("case score: monotone in every ratio")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        auto m = random_matrix(gen, 3, 4, 5);
        const double before = case_score(m);
        auto raised = m;
        const std::size_t i = k % 3, j = k % 4;
        if (k % 2 == 0) {
            raised.r_last(i, j) += (1.0 - raised.r_last(i, j)) * up(gen);
        } else {
            auto& s = raised.samples(i, j)[k % 5];
            s += (1.0 - s) * up(gen);
        }
        CHECK(case_score(raised) >= before);
    }
}

TEST_CASE("overall score")
{
    std::map<std::string, double> ones, halves;
    for (const auto& c : all_cases()) {
        ones[c.str()] = 1.0;
        halves[c.str()] = 0.5;
    }
    CHECK(overall_score(ones, uniform_weights()) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(overall_score(halves, uniform_weights()) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(overall_score({{"a", 1.0}, {"b", 0.5}}, {{"a", 60.0}, {"b", 40.0}}) == doctest::Approx(80.0));
    CHECK_THROWS_WITH_AS(overall_score({{"a", 1.0}}, {{"b", 100.0}}), doctest::Contains("'a'"),
                         std::invalid_argument);
}

TEST_CASE("cases and filters")
{
    const auto all = all_cases();
    CHECK(all.size() == 49);
    CHECK(all.front().str() == "F1_10:T1");
    CHECK(all.back().str() == "F6:T7");
    CHECK(match_cases("*").size() == 49);
    CHECK(match_cases("F1:T3").size() == 2);
    CHECK(match_cases("F1_50:T3").front().str() == "F1_50:T3");
    CHECK(match_cases("F2").size() == 7);
    CHECK(match_cases("F2:*").size() == 7);
    CHECK(match_cases("*:T5").size() == 7);
    CHECK_THROWS_WITH_AS(match_cases("F9:T1"), doctest::Contains("unknown function"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(match_cases("F1:T9"), doctest::Contains("unknown change type"), std::invalid_argument);
    CHECK_THROWS_AS(match_cases(":T1"), std::invalid_argument);
    CHECK_THROWS_AS(match_cases("F1:"), std::invalid_argument);
    CHECK_THROWS_AS(match_cases(""), std::invalid_argument);
}

TEST_CASE("weights: uniform default and file loading")
{
    double total = 0.0;
    for (const auto& [id, w] : uniform_weights()) {
        (void)id;
        total += w;
    }
    CHECK(std::abs(total - 100.0) < 1e-9);

    const auto dir = scratch_dir("weights");
    {
        std::ofstream out(dir / "w.tsv");
        out << "# case\tweight\n";
        for (const auto& c : all_cases())
            out << c.str() << '\t' << (c.str() == "F1_10:T1" ? 100.0 - 48 * 2.0 : 2.0) << '\n';
    }
    const auto w = load_weights((dir / "w.tsv").string());
    CHECK(w.at("F1_10:T1") == 4.0);
    CHECK(w.at("F6:T7") == 2.0);

    {
        std::ofstream out(dir / "short.tsv");
        out << "F1_10:T1\t100\n";
    }
    CHECK_THROWS_WITH_AS(load_weights((dir / "short.tsv").string()), doctest::Contains("no weight"), ConfigError);
    {
        std::ofstream out(dir / "sum.tsv");
        for (const auto& c : all_cases())
            out << c.str() << "\t3\n";
    }
    CHECK_THROWS_WITH_AS(load_weights((dir / "sum.tsv").string()), doctest::Contains("sum"), ConfigError);
    CHECK_THROWS_AS(load_weights((dir / "missing.tsv").string()), std::runtime_error);
}

TEST_CASE("experiment config: parsing")
{
    const auto c = ExperimentConfig::from_overrides(Overrides::parse(
        "runs=3\nnum_change=4\nchange_frequency=1000\nsamples=10\noptimizers=qcsso, ssa_baseline\n"
        "cases=F1:T1,F3\nseed=9\ngdbg.dimension=5\nqcsso.momentum=0.3\npso.chi=0.7\n"));
    CHECK(c.runs == 3);
    CHECK(c.num_change == 4);
    CHECK(c.change_frequency == 1000);
    CHECK(c.samples == 10);
    CHECK(c.optimizers == std::vector<std::string>{"qcsso", "ssa_baseline"});
    CHECK(c.cases.size() == 9);
    CHECK(c.seed == 9);
    CHECK(c.seed_set);
    CHECK(c.gdbg.contains("dimension"));
    CHECK(c.optimizer_overrides.at("qcsso").contains("momentum"));

    const auto d = ExperimentConfig::from_overrides(Overrides::parse("change_frequency=auto\n"));
    CHECK(d.change_frequency == 0);
    CHECK(d.runs == 20);
    CHECK(d.num_change == 60);
    CHECK(d.cases.size() == 49);
    CHECK(!d.seed_set);

    CHECK_THROWS_WITH_AS(ExperimentConfig::from_overrides(Overrides::parse("rnus=3\n")), doctest::Contains("rnus"),
                         ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_overrides(Overrides::parse("runs=0\n")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_overrides(Overrides::parse("gdbg.bogus=1\n")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_overrides(Overrides::parse("qcsso.bogus=1\n")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_overrides(Overrides::parse("optimizers=cpso\n")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_overrides(Overrides::parse("cases=F9\n")), std::invalid_argument);
}

TEST_CASE("seeds are stable and distinct")
{
    const CaseId a{gdbg::Problem::f2, gdbg::ChangeType::recurrent};
    const CaseId b{gdbg::Problem::f3, gdbg::ChangeType::recurrent};
    CHECK(problem_seed(1, a, 0) == problem_seed(1, a, 0));
    CHECK(problem_seed(1, a, 0) != problem_seed(1, a, 1));
    CHECK(problem_seed(1, a, 0) != problem_seed(1, b, 0));
    CHECK(problem_seed(1, a, 0) != problem_seed(2, a, 0));
    CHECK(optimizer_seed(1, a, "qcsso", 0) != optimizer_seed(1, a, "pso_baseline", 0));
}

TEST_CASE("collect_errors matches the scripted-problem oracle")
{
    ExperimentConfig c;
    c.runs = 2;
    c.num_change = 2;
    c.samples = 4;
    c.seed = 3;
    const CaseId id{gdbg::Problem::f2, gdbg::ChangeType::small_step};
    const ProblemFactory factory = [](std::uint64_t seed) {
        return std::make_unique<FlatObjective>(level_for(seed), 500);
    };
    for (std::string opt : {"qcsso", "pso_baseline", "ssa_baseline"}) {
        const auto m = collect_errors(c, factory, id, opt);
        REQUIRE(m.runs() == 2);
        REQUIRE(m.changes() == 2);
        for (int i = 0; i < 2; ++i) {
            const double level = level_for(problem_seed(3, id, i));
            for (int j = 0; j < 2; ++j) {
                CHECK(m.e_last(i, j) == level + j);
                CHECK(m.r_last(i, j) == doctest::Approx(1.0 / (1.0 + level + j)));
                CHECK(m.samples(i, j).size() == 4);
            }
        }
        const auto r = summarize(m);
        const double l0 = level_for(problem_seed(3, id, 0));
        const double l1 = level_for(problem_seed(3, id, 1));
        CHECK(r.avg_best == doctest::Approx((l0 + l1) / 2.0));
        CHECK(r.avg_worst == doctest::Approx((l0 + l1) / 2.0 + 1.0));
        CHECK(r.avg_mean == doctest::Approx((l0 + l1) / 2.0 + 0.5));
    }
}

TEST_CASE("optimum found immediately gives zero statistics")
{
    ExperimentConfig c;
    c.runs = 1;
    c.num_change = 1;
    const CaseId id{gdbg::Problem::f2, gdbg::ChangeType::small_step};
    const auto m = collect_errors(c, [](std::uint64_t) { return std::make_unique<FlatObjective>(0.0, 300); }, id,
                                  "qcsso");
    const auto r = summarize(m);
    CHECK(r.avg_best == 0.0);
    CHECK(r.avg_mean == 0.0);
    CHECK(r.avg_worst == 0.0);
    CHECK(r.score == 1.0);
}

TEST_CASE("run_case is deterministic and independent of thread count")
{
    auto c = small_config();
    const CaseId id{gdbg::Problem::f1_10, gdbg::ChangeType::random_dimension};
    const auto a = collect_errors(c, gdbg_factory(c, id), id, "qcsso", 1);
    const auto b = collect_errors(c, gdbg_factory(c, id), id, "qcsso", 3);
    for (std::size_t i = 0; i < a.runs(); ++i)
        for (std::size_t j = 0; j < a.changes(); ++j) {
            CHECK(a.e_last(i, j) == b.e_last(i, j));
            CHECK(a.samples(i, j) == b.samples(i, j));
        }
    const auto r1 = run_case(c, id, "qcsso");
    const auto r2 = run_case(c, id, "qcsso", 2);
    CHECK(r1.avg_mean == r2.avg_mean);
    CHECK(r1.score == r2.score);
    CHECK(r1.avg_best <= r1.avg_mean);
    CHECK(r1.avg_mean <= r1.avg_worst);
    CHECK((r1.score > 0.0 && r1.score <= 1.0));
}

TEST_CASE("case order does not change results")
{
    auto c = small_config();
    const auto forward = run_experiment(c, 2);
    std::reverse(c.cases.begin(), c.cases.end());
    const auto backward = run_experiment(c, 1);
    REQUIRE(forward.size() == backward.size());
    for (const auto& f : forward) {
        const auto it = std::find_if(backward.begin(), backward.end(), [&](const CaseOutcome& b) {
            return b.optimizer == f.optimizer && b.id == f.id;
        });
        REQUIRE(it != backward.end());
        CHECK(it->result.avg_mean == f.result.avg_mean);
        CHECK(it->result.std == f.result.std);
        CHECK(it->result.score == f.result.score);
    }
}

TEST_CASE("number formatting")
{
    CHECK(format_scientific(0.0) == "0.00E+00");
    CHECK(format_scientific(0.000336) == "3.36E-04");
    CHECK(format_scientific(4.88) == "4.88E+00");
    CHECK(format_scientific(123456.0) == "1.23E+05");
    CHECK(format_fixed(68.40671, 4) == "68.4067");
    CHECK(format_roundtrip(0.1) == "0.1");
}

TEST_CASE("csv: empty results give header-only tables")
{
    const auto dir = scratch_dir("empty");
    write_results({}, uniform_weights(), dir.string());
    for (auto p : gdbg::all_problems)
        CHECK(slurp(dir / errors_file_name(p)) == "algorithm,stat,T1,T2,T3,T4,T5,T6,T7\n");
    CHECK(slurp(dir / "scores.csv") == "algorithm,case,score\n");
    CHECK(read_ratios((dir / "ratios.csv").string()).empty());
}

TEST_CASE("csv: tables, scores and the ratio round trip")
{
    std::vector<CaseOutcome> outcomes;
    auto add = [&](std::string alg, CaseId id, std::vector<std::vector<double>> rows, double r) {
        auto m = ErrorMatrix::from_rows(rows);
        for (std::size_t i = 0; i < m.runs(); ++i)
            for (std::size_t j = 0; j < m.changes(); ++j) {
                m.r_last(i, j) = r;
                m.samples(i, j) = {r, 1.0};
            }
        outcomes.push_back({std::move(alg), id, m, summarize(m)});
    };
    add("qcsso", {gdbg::Problem::f1_10, gdbg::ChangeType::small_step}, {{0.000336, 0.000336}}, 1.0);
    add("qcsso", {gdbg::Problem::f1_10, gdbg::ChangeType::chaotic}, {{0, 2}}, 0.5);
    add("pso_baseline", {gdbg::Problem::f1_10, gdbg::ChangeType::small_step}, {{4.88}}, 0.25);

    const auto dir = scratch_dir("tables");
    write_results(outcomes, uniform_weights(), dir.string());
    CHECK(slurp(dir / "errors_F1_10.csv") ==
          "algorithm,stat,T1,T2,T3,T4,T5,T6,T7\n"
          "qcsso,Avg.Best,3.36E-04,,,0.00E+00,,,\n"
          "qcsso,Avg.Worst,3.36E-04,,,2.00E+00,,,\n"
          "qcsso,Avg.Mean,3.36E-04,,,1.00E+00,,,\n"
          "qcsso,STD,0.00E+00,,,1.00E+00,,,\n"
          "pso_baseline,Avg.Best,4.88E+00,,,,,,\n"
          "pso_baseline,Avg.Worst,4.88E+00,,,,,,\n"
          "pso_baseline,Avg.Mean,4.88E+00,,,,,,\n"
          "pso_baseline,STD,0.00E+00,,,,,,\n");
    CHECK(slurp(dir / "errors_F2.csv") == "algorithm,stat,T1,T2,T3,T4,T5,T6,T7\n");

    const double w = 100.0 / 49.0;
    const double q4 = 0.5 / 1.25;
    const double p1 = 0.25 / (1.0 + 0.375);
    CHECK(slurp(dir / "scores.csv") ==
          "algorithm,case,score\n"
          "pso_baseline,F1_10:T1," + format_fixed(p1, 6) + "\n"
          "pso_baseline,F1_10," + format_fixed(w * p1, 4) + "\n"
          "pso_baseline,overall," + format_fixed(w * p1, 4) + "\n"
          "qcsso,F1_10:T1,1.000000\n"
          "qcsso,F1_10:T4," + format_fixed(q4, 6) + "\n"
          "qcsso,F1_10," + format_fixed(w * (1.0 + q4), 4) + "\n"
          "qcsso,overall," + format_fixed(w * (1.0 + q4), 4) + "\n");

    const auto back = read_ratios((dir / "ratios.csv").string());
    REQUIRE(back.size() == outcomes.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].optimizer == outcomes[k].optimizer);
        CHECK(back[k].id == outcomes[k].id);
        CHECK(back[k].result.avg_mean == outcomes[k].result.avg_mean);
        CHECK(back[k].result.score == outcomes[k].result.score);
    }

    CHECK_THROWS_WITH_AS(write_results(outcomes, uniform_weights(), (dir / "no" / "such").string()),
                         doctest::Contains("no/such"), std::runtime_error);
}

TEST_CASE("csv: malformed ratio files are rejected with the line")
{
    const auto dir = scratch_dir("bad_ratios");
    {
        std::ofstream out(dir / "ratios.csv");
        out << "header\nqcsso,F1_10:T1,0,0,abc,1\n";
    }
    CHECK_THROWS_WITH_AS(read_ratios((dir / "ratios.csv").string()), doctest::Contains(":2:"), std::runtime_error);
}
