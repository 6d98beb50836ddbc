#include "dynopt/harness/csv_export.hpp"

#include "dynopt/core/format.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dynopt::harness {

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name)
{
    const auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

void close_out(std::ofstream& out, const std::string& dir, const std::string& name)
{
    out.close();
    if (!out)
        throw std::runtime_error("write failed for '" + (std::filesystem::path(dir) / name).string() + "'");
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad number '" + s + "'");
    return v;
}

std::size_t parse_index(const std::string& s)
{
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad index '" + s + "'");
    return v;
}

} // namespace

std::map<std::string, ScoreTable> score_tables(const std::vector<CaseOutcome>& outcomes,
                                               const std::map<std::string, double>& weights)
{
    std::map<std::string, ScoreTable> tables;
    for (const auto& o : outcomes) {
        auto& t = tables[o.optimizer];
        t.cases[o.id.str()] = o.result.score;
    }
    for (auto& [name, t] : tables) {
        (void)name;
        t.overall = overall_score(t.cases, weights);
        for (const auto& [id, score] : t.cases) {
            const auto variant = id.substr(0, id.find(':'));
            t.functions[variant] += weights.at(id) * score;
        }
    }
    return tables;
}

std::string errors_file_name(gdbg::Problem p)
{
    return "errors_" + gdbg::to_string(p) + ".csv";
}

void write_error_tables(const std::vector<CaseOutcome>& outcomes, const std::string& dir)
{
    struct Stat
    {
        const char* name;
        double CaseResult::*field;
    };
    const Stat stats[] = {{"Avg.Best", &CaseResult::avg_best},
                          {"Avg.Worst", &CaseResult::avg_worst},
                          {"Avg.Mean", &CaseResult::avg_mean},
                          {"STD", &CaseResult::std}};

    for (auto p : gdbg::all_problems) {
        const auto name = errors_file_name(p);
        auto out = open_out(dir, name);
        out << "algorithm,stat";
        for (auto t : gdbg::all_change_types)
            out << ',' << gdbg::to_string(t);
        out << '\n';

        // Algorithms in first-appearance order.
        std::vector<std::string> algorithms;
        for (const auto& o : outcomes)
            if (o.id.problem == p && std::find(algorithms.begin(), algorithms.end(), o.optimizer) == algorithms.end())
                algorithms.push_back(o.optimizer);

        for (const auto& alg : algorithms) {
            for (const auto& stat : stats) {
                out << alg << ',' << stat.name;
                for (auto t : gdbg::all_change_types) {
                    out << ',';
                    for (const auto& o : outcomes)
                        if (o.optimizer == alg && o.id.problem == p && o.id.change == t) {
                            out << format_scientific(o.result.*stat.field, 2);
                            break;
                        }
                }
                out << '\n';
            }
        }
        close_out(out, dir, name);
    }
}

void write_scores(const std::map<std::string, ScoreTable>& tables, const std::string& dir)
{
    const std::string name = "scores.csv";
    auto out = open_out(dir, name);
    out << "algorithm,case,score\n";
    for (const auto& [alg, t] : tables) {
        for (const auto& c : all_cases()) {
            const auto it = t.cases.find(c.str());
            if (it != t.cases.end())
                out << alg << ',' << it->first << ',' << format_fixed(it->second, 6) << '\n';
        }
        for (auto p : gdbg::all_problems) {
            const auto it = t.functions.find(gdbg::to_string(p));
            if (it != t.functions.end())
                out << alg << ',' << it->first << ',' << format_fixed(it->second, 4) << '\n';
        }
        out << alg << ",overall," << format_fixed(t.overall, 4) << '\n';
    }
    close_out(out, dir, name);
}

void write_ratios(const std::vector<CaseOutcome>& outcomes, const std::string& dir)
{
    const std::string name = "ratios.csv";
    auto out = open_out(dir, name);
    out << "algorithm,case,run,change,e_last,r_last,samples...\n";
    for (const auto& o : outcomes) {
        const auto& m = o.errors;
        for (std::size_t i = 0; i < m.runs(); ++i) {
            for (std::size_t j = 0; j < m.changes(); ++j) {
                out << o.optimizer << ',' << o.id.str() << ',' << i << ',' << j << ','
                    << format_roundtrip(m.e_last(i, j)) << ',' << format_roundtrip(m.r_last(i, j));
                for (double r : m.samples(i, j))
                    out << ',' << format_roundtrip(r);
                out << '\n';
            }
        }
    }
    close_out(out, dir, name);
}

void write_trace(const CaseOutcome& outcome, const optimizers::TrajectoryRecord& rec, const std::string& dir)
{
    auto id = outcome.id.str();
    std::replace(id.begin(), id.end(), ':', '_');
    const auto name = "trace_" + outcome.optimizer + "_" + id + ".csv";
    auto out = open_out(dir, name);
    optimizers::write_trajectory(rec, out);
    close_out(out, dir, name);
}

void write_results(const std::vector<CaseOutcome>& outcomes, const std::map<std::string, double>& weights,
                   const std::string& dir)
{
    write_error_tables(outcomes, dir);
    write_ratios(outcomes, dir);
    write_scores(score_tables(outcomes, weights), dir);
}

std::vector<CaseOutcome> read_ratios(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");

    struct Cell
    {
        std::size_t run, change;
        double e, r;
        std::vector<double> samples;
    };
    std::vector<std::pair<std::string, CaseId>> order;
    std::map<std::pair<std::string, std::string>, std::vector<Cell>> cells;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty())
            continue;
        try {
            const auto f = split_fields(line);
            if (f.size() < 6)
                throw std::runtime_error("too few fields");
            const auto matches = match_cases(f[1]);
            if (matches.size() != 1)
                throw std::runtime_error("bad case '" + f[1] + "'");
            Cell c{parse_index(f[2]), parse_index(f[3]), parse_double(f[4]), parse_double(f[5]), {}};
            for (std::size_t k = 6; k < f.size(); ++k)
                c.samples.push_back(parse_double(f[k]));
            const auto key = std::make_pair(f[0], matches.front().str());
            if (cells.find(key) == cells.end())
                order.emplace_back(f[0], matches.front());
            cells[key].push_back(std::move(c));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }

    std::vector<CaseOutcome> out;
    for (const auto& [alg, id] : order) {
        const auto& list = cells[{alg, id.str()}];
        std::size_t runs = 0, changes = 0;
        for (const auto& c : list) {
            runs = std::max(runs, c.run + 1);
            changes = std::max(changes, c.change + 1);
        }
        if (list.size() != runs * changes)
            throw std::runtime_error(path + ": incomplete data for " + alg + " " + id.str());
        ErrorMatrix m(runs, changes);
        for (const auto& c : list) {
            m.e_last(c.run, c.change) = c.e;
            m.r_last(c.run, c.change) = c.r;
            m.samples(c.run, c.change) = c.samples;
        }
        out.push_back({alg, id, m, summarize(m)});
    }
    return out;
}

} // namespace dynopt::harness
