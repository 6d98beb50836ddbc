#include "dynopt/harness/experiment.hpp"

#include "dynopt/core/rng.hpp"
#include "dynopt/optimizers/baselines.hpp"
#include "dynopt/optimizers/qcsso.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dynopt::harness {

std::string CaseId::str() const
{
    return gdbg::to_string(problem) + ":" + gdbg::to_string(change);
}

std::vector<CaseId> all_cases()
{
    std::vector<CaseId> out;
    for (auto p : gdbg::all_problems)
        for (auto t : gdbg::all_change_types)
            out.push_back({p, t});
    return out;
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        const auto piece = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (!piece.empty())
            out.push_back(piece);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

/// Function part of a filter: "*", "F1" or an exact variant.
std::vector<gdbg::Problem> match_functions(const std::string& f)
{
    if (f == "*")
        return {std::begin(gdbg::all_problems), std::end(gdbg::all_problems)};
    if (f == "F1" || f == "f1")
        return {gdbg::Problem::f1_10, gdbg::Problem::f1_50};
    return {gdbg::parse_problem(f)};
}

std::vector<gdbg::ChangeType> match_changes(const std::string& t)
{
    if (t.empty() || t == "*")
        return {std::begin(gdbg::all_change_types), std::end(gdbg::all_change_types)};
    return {gdbg::parse_change_type(t)};
}

} // namespace

std::vector<CaseId> match_cases(std::string_view pattern)
{
    const std::string p = trim(pattern);
    if (p.empty())
        throw std::invalid_argument("empty case filter");
    const auto colon = p.find(':');
    const std::string f = colon == std::string::npos ? p : p.substr(0, colon);
    const std::string t = colon == std::string::npos ? "" : p.substr(colon + 1);
    if (f.empty() || (colon != std::string::npos && t.empty()))
        throw std::invalid_argument("malformed case filter '" + p + "'");
    std::vector<CaseId> out;
    for (auto fn : match_functions(f))
        for (auto ct : match_changes(t))
            out.push_back({fn, ct});
    return out;
}

std::map<std::string, double> uniform_weights()
{
    std::map<std::string, double> w;
    const auto cases = all_cases();
    for (const auto& c : cases)
        w[c.str()] = 100.0 / static_cast<double>(cases.size());
    return w;
}

std::map<std::string, double> load_weights(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open weights file '" + path + "'");
    std::map<std::string, double> w;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const auto tab = text.find('\t');
        if (tab == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected case<TAB>weight");
        const auto matches = match_cases(trim(text.substr(0, tab)));
        if (matches.size() != 1)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": weight needs a single case");
        double value = 0.0;
        try {
            std::size_t used = 0;
            const auto num = trim(text.substr(tab + 1));
            value = std::stod(num, &used);
            if (used != num.size())
                throw std::invalid_argument(num);
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad weight");
        }
        w[matches.front().str()] = value;
    }
    double total = 0.0;
    for (const auto& c : all_cases()) {
        const auto it = w.find(c.str());
        if (it == w.end())
            throw ConfigError(path + ": no weight for case " + c.str());
        total += it->second;
    }
    if (std::abs(total - 100.0) > 1e-9)
        throw ConfigError(path + ": weights sum to " + std::to_string(total) + ", expected 100");
    return w;
}

ExperimentConfig ExperimentConfig::from_overrides(const Overrides& o, const std::string& base_dir)
{
    ExperimentConfig c;
    o.read("runs", c.runs);
    o.read("num_change", c.num_change);
    o.read("samples", c.samples);
    if (o.contains("seed")) {
        o.read("seed", c.seed);
        c.seed_set = true;
    }
    std::string freq = "auto";
    o.read("change_frequency", freq);
    if (freq != "auto") {
        Overrides one{{"change_frequency", freq}};
        one.read("change_frequency", c.change_frequency);
        if (c.change_frequency == 0)
            throw ConfigError("change_frequency must be positive or 'auto'");
    }
    std::string list;
    if (o.contains("optimizers")) {
        o.read("optimizers", list);
        c.optimizers = split(list, ',');
    }
    if (o.contains("cases")) {
        o.read("cases", list);
        c.cases.clear();
        for (const auto& pattern : split(list, ','))
            for (const auto& id : match_cases(pattern))
                if (std::find(c.cases.begin(), c.cases.end(), id) == c.cases.end())
                    c.cases.push_back(id);
    }
    if (o.contains("weights")) {
        std::string path;
        o.read("weights", path);
        std::filesystem::path p(path);
        if (p.is_relative())
            p = std::filesystem::path(base_dir) / p;
        c.weights = load_weights(p.string());
    }

    c.gdbg = o.with_prefix("gdbg.");
    c.optimizer_overrides["qcsso"] = o.with_prefix("qcsso.");
    c.optimizer_overrides["pso_baseline"] = o.with_prefix("pso.");
    c.optimizer_overrides["ssa_baseline"] = o.with_prefix("ssa.");
    // Prefixed keys are checked by their own component in validate().
    for (const auto& entry : o.values()) {
        const auto& key = entry.first;
        for (const char* prefix : {"gdbg.", "qcsso.", "pso.", "ssa."}) {
            std::string ignored;
            if (key.rfind(prefix, 0) == 0)
                o.read(key, ignored);
        }
    }
    o.reject_unused("experiment");
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path)
{
    const auto o = Overrides::load(path);
    const auto dir = std::filesystem::path(path).parent_path();
    return from_overrides(o, dir.empty() ? "." : dir.string());
}

void ExperimentConfig::validate() const
{
    if (runs < 1 || num_change < 1 || samples < 1)
        throw ConfigError("runs, num_change and samples must be >= 1");
    if (change_frequency != 0 && change_frequency < static_cast<std::uint64_t>(samples))
        throw ConfigError("change_frequency must be at least the sample count");
    for (const auto& id : optimizers) {
        if (std::find(std::begin(optimizers::optimizer_ids), std::end(optimizers::optimizer_ids), id) ==
            std::end(optimizers::optimizer_ids))
            throw ConfigError("unknown optimizer '" + id + "'");
    }
    for (const auto& c : cases)
        if (weights.find(c.str()) == weights.end())
            throw ConfigError("no weight for case " + c.str());

    // Dry-apply the overrides so misspelt keys fail before any run starts.
    gdbg::GdbgConfig g;
    g.apply_overrides(Overrides(gdbg));
    for (const auto& [id, o] : optimizer_overrides) {
        if (o.empty())
            continue;
        if (id == "qcsso") {
            optimizers::QcssoConfig q;
            q.apply_overrides(Overrides(o));
        } else if (id == "pso_baseline") {
            optimizers::PsoConfig p;
            p.apply_overrides(Overrides(o));
        } else if (id == "ssa_baseline") {
            optimizers::SsaConfig s;
            s.apply_overrides(Overrides(o));
        }
    }
}

std::uint64_t problem_seed(std::uint64_t base, const CaseId& c, int run)
{
    return derive_seed(base, "problem/" + c.str() + "/" + std::to_string(run));
}

std::uint64_t optimizer_seed(std::uint64_t base, const CaseId& c, std::string_view optimizer, int run)
{
    return derive_seed(base, "optimizer/" + c.str() + "/" + std::string(optimizer) + "/" + std::to_string(run));
}

ProblemFactory gdbg_factory(const ExperimentConfig& config, const CaseId& c)
{
    Overrides o = config.gdbg;
    if (config.change_frequency != 0)
        o.set("change_frequency", std::to_string(config.change_frequency));
    return [o, c](std::uint64_t seed) -> std::unique_ptr<DynamicObjective> {
        return std::make_unique<gdbg::GdbgInstance>(c.problem, c.change, seed, Overrides(o));
    };
}

optimizers::TrajectoryRecord run_once(const ExperimentConfig& config, const ProblemFactory& factory,
                                      const CaseId& c, std::string_view optimizer, int run,
                                      bool keep_trace)
{
    auto problem = factory(problem_seed(config.seed, c, run));
    const std::uint64_t freq = problem->change_frequency();
    if (freq == 0)
        throw std::invalid_argument("case " + c.str() + " has no change frequency");
    const std::uint64_t budget = freq * static_cast<std::uint64_t>(config.num_change);

    Overrides o;
    const auto it = config.optimizer_overrides.find(std::string(optimizer));
    if (it != config.optimizer_overrides.end())
        o = it->second;
    optimizers::RecordOptions options;
    options.samples = static_cast<std::size_t>(config.samples);
    options.keep_trace = keep_trace;
    auto rec = optimizers::run(optimizer, *problem, budget, optimizer_seed(config.seed, c, optimizer, run), o,
                               options);
    if (rec.windows() != static_cast<std::size_t>(config.num_change))
        throw std::runtime_error(std::string(optimizer) + " on " + c.str() + " stopped before the budget");
    return rec;
}

namespace {

void store(ErrorMatrix& m, int run, const optimizers::TrajectoryRecord& rec)
{
    const auto i = static_cast<std::size_t>(run);
    for (std::size_t j = 0; j < m.changes(); ++j) {
        m.e_last(i, j) = rec.e_last[j];
        m.r_last(i, j) = rec.r_last[j];
        m.samples(i, j) = rec.ratio_samples[j];
    }
}

/// Runs `task(0..count-1)` on up to `jobs` threads; rethrows the first
/// failure after all workers stop.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task)
{
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed) {
                const std::size_t i = next++;
                if (i >= count)
                    return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    failed = true;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace

ErrorMatrix collect_errors(const ExperimentConfig& config, const ProblemFactory& factory, const CaseId& c,
                           std::string_view optimizer, int jobs)
{
    ErrorMatrix m(static_cast<std::size_t>(config.runs), static_cast<std::size_t>(config.num_change));
    parallel_for(m.runs(), jobs, [&](std::size_t run) {
        const int r = static_cast<int>(run);
        store(m, r, run_once(config, factory, c, optimizer, r));
    });
    return m;
}

CaseResult run_case(const ExperimentConfig& config, const CaseId& c, std::string_view optimizer, int jobs)
{
    return summarize(collect_errors(config, gdbg_factory(config, c), c, optimizer, jobs));
}

std::vector<CaseOutcome> run_experiment(
    const ExperimentConfig& config, int jobs,
    const std::function<void(const CaseOutcome&, const optimizers::TrajectoryRecord&)>& trace)
{
    std::vector<CaseOutcome> out;
    std::vector<ProblemFactory> factories;
    for (const auto& opt : config.optimizers) {
        for (const auto& c : config.cases) {
            out.push_back({opt, c,
                           ErrorMatrix(static_cast<std::size_t>(config.runs),
                                       static_cast<std::size_t>(config.num_change)),
                           {}});
            factories.push_back(gdbg_factory(config, c));
        }
    }

    const auto runs = static_cast<std::size_t>(config.runs);
    std::mutex trace_mutex;
    parallel_for(out.size() * runs, jobs, [&](std::size_t unit) {
        auto& pair = out[unit / runs];
        const int run = static_cast<int>(unit % runs);
        const bool traced = trace && run == 0;
        const auto rec = run_once(config, factories[unit / runs], pair.id, pair.optimizer, run, traced);
        store(pair.errors, run, rec);
        if (traced) {
            std::lock_guard lock(trace_mutex);
            trace(pair, rec);
        }
    });
    for (auto& pair : out)
        pair.result = summarize(pair.errors);
    return out;
}

} // namespace dynopt::harness
