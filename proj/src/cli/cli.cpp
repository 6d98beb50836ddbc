#include "dynopt/cli/cli.hpp"

#include "dynopt/core/format.hpp"
#include "dynopt/harness/csv_export.hpp"
#include "dynopt/harness/experiment.hpp"
#include "dynopt/harness/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace dynopt::cli {

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& source)
{
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used == text.size() && text.front() != '-')
            return v;
    } catch (const std::exception&) {
    }
    throw UsageError("invalid seed '" + text + "' from " + source);
}

void validate_filters(const Command& cmd)
{
    for (const auto& pattern : cmd.cases) {
        try {
            harness::match_cases(pattern);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string(e.what()) + " in --case " + pattern);
        }
    }
    for (const auto& id : cmd.optimizers) {
        const auto& ids = optimizers::optimizer_ids;
        if (std::find(std::begin(ids), std::end(ids), id) == std::end(ids))
            throw UsageError("unknown optimizer '" + id + "'");
    }
    if (cmd.jobs < 1)
        throw UsageError("--jobs must be >= 1");
}

std::vector<harness::CaseId> filter_cases(const std::vector<std::string>& patterns)
{
    std::vector<harness::CaseId> out;
    for (const auto& p : patterns)
        for (const auto& id : harness::match_cases(p))
            if (std::find(out.begin(), out.end(), id) == out.end())
                out.push_back(id);
    return out;
}

int do_list(const Command& cmd, std::ostream& out)
{
    const auto cases = cmd.cases.empty() ? harness::all_cases() : filter_cases(cmd.cases);
    for (const auto& c : cases)
        out << c.str() << '\n';
    return exit_success;
}

int do_run(const Command& cmd, std::ostream& out)
{
    harness::ExperimentConfig config;
    if (cmd.config)
        config = harness::ExperimentConfig::load(*cmd.config);
    if (cmd.seed) {
        config.seed = *cmd.seed;
    } else if (!config.seed_set) {
        if (const char* env = std::getenv("DYNOPT_SEED"))
            config.seed = parse_seed(env, "DYNOPT_SEED");
    }
    if (!cmd.cases.empty()) {
        // The command-line filter narrows the configured case set.
        const auto wanted = filter_cases(cmd.cases);
        std::vector<harness::CaseId> kept;
        for (const auto& c : config.cases)
            if (std::find(wanted.begin(), wanted.end(), c) != wanted.end())
                kept.push_back(c);
        config.cases = kept;
    }
    if (!cmd.optimizers.empty()) {
        std::vector<std::string> kept;
        for (const auto& id : config.optimizers)
            if (std::find(cmd.optimizers.begin(), cmd.optimizers.end(), id) != cmd.optimizers.end())
                kept.push_back(id);
        config.optimizers = kept;
    }
    if (config.cases.empty())
        throw std::runtime_error("no case left after applying --case to the configured cases");
    if (config.optimizers.empty())
        throw std::runtime_error("no optimizer left after applying --optimizer to the configured optimizers");
    if (cmd.weights)
        config.weights = harness::load_weights(*cmd.weights);
    config.validate();

    std::filesystem::create_directories(cmd.out);
    std::function<void(const harness::CaseOutcome&, const optimizers::TrajectoryRecord&)> trace;
    if (cmd.trace)
        trace = [&](const harness::CaseOutcome& o, const optimizers::TrajectoryRecord& rec) {
            harness::write_trace(o, rec, cmd.out);
        };
    const auto outcomes = harness::run_experiment(config, cmd.jobs, trace);
    harness::write_results(outcomes, config.weights, cmd.out);

    for (const auto& [alg, table] : harness::score_tables(outcomes, config.weights))
        out << alg << ' ' << format_fixed(table.overall, 4) << '\n';
    return exit_success;
}

int do_score(const Command& cmd, std::ostream& out)
{
    const auto path = (std::filesystem::path(cmd.out) / "ratios.csv").string();
    auto outcomes = harness::read_ratios(path);
    if (!cmd.optimizers.empty() || !cmd.cases.empty()) {
        const auto wanted = cmd.cases.empty() ? harness::all_cases() : filter_cases(cmd.cases);
        std::erase_if(outcomes, [&](const harness::CaseOutcome& o) {
            const bool opt_ok = cmd.optimizers.empty() ||
                                std::find(cmd.optimizers.begin(), cmd.optimizers.end(), o.optimizer) !=
                                    cmd.optimizers.end();
            return !opt_ok || std::find(wanted.begin(), wanted.end(), o.id) == wanted.end();
        });
    }
    const auto weights = cmd.weights ? harness::load_weights(*cmd.weights) : harness::uniform_weights();
    const auto tables = harness::score_tables(outcomes, weights);
    harness::write_scores(tables, cmd.out);
    for (const auto& [alg, table] : tables)
        out << alg << ' ' << format_fixed(table.overall, 4) << '\n';
    return exit_success;
}

int do_selftest(std::ostream& out)
{
    const auto checks = harness::run_selftest(out);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    return ok ? exit_success : exit_failure;
}

} // namespace

std::optional<Command> parse_args(int argc, const char* const* argv, std::ostream& out)
{
    CLI::App app{"Dynamic optimization benchmark runner", "dynopt"};
    app.require_subcommand(1);

    Command cmd;
    std::string seed_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--case", cmd.cases, "case filter, e.g. F1:T3, F2, *:T5, *")->take_all();
        sub->add_option("--optimizer", cmd.optimizers, "optimizer id (qcsso, pso_baseline, ssa_baseline)");
    };

    auto* list = app.add_subcommand("list", "print the benchmark cases");
    list->add_option("--case", cmd.cases, "case filter");

    auto* run = app.add_subcommand("run", "run an experiment and write CSV tables");
    run->add_option("--config", cmd.config, "experiment file (key=value)");
    run->add_option("--out", cmd.out, "output directory")->capture_default_str();
    run->add_option("--seed", seed_text, "base seed (default: config, then DYNOPT_SEED, then 0)");
    run->add_option("--jobs", cmd.jobs, "worker threads")->capture_default_str();
    run->add_flag("--trace", cmd.trace, "write error-vs-evaluation traces of each case's first run");
    run->add_option("--weights", cmd.weights, "case weight table (case<TAB>weight)");
    add_common(run);

    auto* score = app.add_subcommand("score", "recompute scores from a results directory");
    score->add_option("--out", cmd.out, "results directory")->capture_default_str();
    score->add_option("--weights", cmd.weights, "case weight table (case<TAB>weight)");
    add_common(score);

    app.add_subcommand("selftest", "run the built-in invariant checks");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i)
        args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage;
        usage << e.what() << '\n' << app.help();
        throw UsageError(usage.str());
    }

    if (list->parsed())
        cmd.verb = Verb::list;
    else if (run->parsed())
        cmd.verb = Verb::run;
    else if (score->parsed())
        cmd.verb = Verb::score;
    else
        cmd.verb = Verb::selftest;
    if (!seed_text.empty())
        cmd.seed = parse_seed(seed_text, "--seed");
    validate_filters(cmd);
    return cmd;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err)
{
    try {
        switch (cmd.verb) {
        case Verb::list:
            return do_list(cmd, out);
        case Verb::run:
            return do_run(cmd, out);
        case Verb::score:
            return do_score(cmd, out);
        case Verb::selftest:
            return do_selftest(out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}

int main_entry(int argc, const char* const* argv)
{
    std::optional<Command> cmd;
    try {
        cmd = parse_args(argc, argv, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what();
        if (std::string_view(e.what()).back() != '\n')
            std::cerr << '\n';
        return exit_usage;
    }
    if (!cmd)
        return exit_success;
    return execute(*cmd, std::cout, std::cerr);
}

} // namespace dynopt::cli
