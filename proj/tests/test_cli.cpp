#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynopt/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace dynopt::cli;
namespace fs = std::filesystem;

namespace {

std::optional<Command> parse(std::vector<const char*> args, std::ostream& out)
{
    args.insert(args.begin(), "dynopt");
    return parse_args(static_cast<int>(args.size()), args.data(), out);
}

std::optional<Command> parse(std::vector<const char*> args)
{
    std::ostringstream sink;
    return parse(std::move(args), sink);
}

int entry(std::vector<const char*> args)
{
    args.insert(args.begin(), "dynopt");
    return main_entry(static_cast<int>(args.size()), args.data());
}

fs::path scratch_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("dynopt_cli_" + name);
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

std::set<std::string> listing(const fs::path& dir)
{
    std::set<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        out.insert(fs::relative(e.path(), dir).string());
    return out;
}

fs::path write_config(const fs::path& dir)
{
    const auto path = dir / "exp.cfg";
    std::ofstream out(path);
    out << "# small experiment\nruns=2\nnum_change=2\nchange_frequency=500\nsamples=5\n"
           "cases=F1_10:T1,F5:T7\noptimizers=qcsso,pso_baseline\n";
    return path;
}

} // namespace

TEST_CASE("parse: run with config, output and seed")
{
    const auto cmd = parse({"run", "--config", "exp.cfg", "--out", "results/", "--seed", "7"});
    REQUIRE(cmd);
    CHECK(cmd->verb == Verb::run);
    CHECK(cmd->config == "exp.cfg");
    CHECK(cmd->out == "results/");
    CHECK(cmd->seed == 7u);
    CHECK(cmd->jobs == 1);
    CHECK(!cmd->trace);
}

TEST_CASE("parse: filters, jobs and trace")
{
    const auto cmd = parse({"run", "--case", "F1:T3", "--case", "F2", "--optimizer", "qcsso", "--jobs", "8", "--trace"});
    REQUIRE(cmd);
    CHECK(cmd->cases == std::vector<std::string>{"F1:T3", "F2"});
    CHECK(cmd->optimizers == std::vector<std::string>{"qcsso"});
    CHECK(cmd->jobs == 8);
    CHECK(cmd->trace);
    CHECK(parse({"list"})->verb == Verb::list);
    CHECK(parse({"selftest"})->verb == Verb::selftest);
    CHECK(parse({"score", "--weights", "w.tsv"})->weights == "w.tsv");
}

TEST_CASE("parse: usage errors")
{
    CHECK_THROWS_WITH_AS(parse({"run", "--case", "F9:T1"}), doctest::Contains("unknown function"), UsageError);
    CHECK_THROWS_AS(parse({"run", "--case", "F1:"}), UsageError);
    CHECK_THROWS_AS(parse({"run", "--optimizer", "cpso"}), UsageError);
    CHECK_THROWS_AS(parse({"run", "--jobs", "0"}), UsageError);
    CHECK_THROWS_AS(parse({"run", "--seed", "-3"}), UsageError);
    CHECK_THROWS_AS(parse({"run", "--bogus"}), UsageError);
    CHECK_THROWS_AS(parse({"frobnicate"}), UsageError);
    CHECK_THROWS_AS(parse({}), UsageError);
}

TEST_CASE("parse: help prints usage")
{
    std::ostringstream out;
    CHECK(!parse({"--help"}, out));
    CHECK(out.str().find("selftest") != std::string::npos);
    std::ostringstream sub;
    CHECK(!parse({"run", "--help"}, sub));
    CHECK(sub.str().find("--config") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(entry({"--help"}) == exit_success);
    CHECK(entry({"list"}) == exit_success);
    CHECK(entry({"list", "--bogus"}) == exit_usage);
    CHECK(entry({"run", "--case", "F9:T1"}) == exit_usage);
    CHECK(entry({"nope"}) == exit_usage);
    const auto dir = scratch_dir("exit");
    const auto missing = (dir / "missing.cfg").string();
    CHECK(entry({"run", "--config", missing.c_str(), "--out", dir.string().c_str()}) == exit_failure);
    CHECK(entry({"score", "--out", dir.string().c_str()}) == exit_failure);
}

TEST_CASE("list prints all 49 cases")
{
    std::ostringstream out, err;
    CHECK(execute(*parse({"list"}), out, err) == 0);
    std::istringstream lines(out.str());
    std::string line;
    int n = 0;
    while (std::getline(lines, line))
        ++n;
    CHECK(n == 49);
    CHECK(out.str().rfind("F1_10:T1\n", 0) == 0);

    std::ostringstream filtered;
    CHECK(execute(*parse({"list", "--case", "F1:T7"}), filtered, err) == 0);
    CHECK(filtered.str() == "F1_10:T7\nF1_50:T7\n");
}

TEST_CASE("selftest passes")
{
    std::ostringstream out, err;
    CHECK(execute(*parse({"selftest"}), out, err) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);
}

TEST_CASE("run and score: outputs, determinism and confinement")
{
    const auto root = scratch_dir("run");
    const auto cfg = write_config(root).string();
    const auto a = (root / "a").string();
    const auto b = (root / "b").string();
    const auto before = listing(root);

    std::ostringstream out, err;
    REQUIRE(execute(*parse({"run", "--config", cfg.c_str(), "--out", a.c_str(), "--seed", "7", "--trace"}), out,
                    err) == 0);
    REQUIRE(execute(*parse({"run", "--config", cfg.c_str(), "--out", b.c_str(), "--seed", "7", "--jobs", "4",
                            "--trace"}),
                    out, err) == 0);
    CHECK(err.str().empty());

    for (const auto& name : listing(a))
        CHECK_MESSAGE(slurp(fs::path(a) / name) == slurp(fs::path(b) / name), name);
    const auto files = listing(a);
    CHECK(files.count("errors_F1_10.csv") == 1);
    CHECK(files.count("errors_F6.csv") == 1);
    CHECK(files.count("scores.csv") == 1);
    CHECK(files.count("ratios.csv") == 1);
    CHECK(files.count("trace_qcsso_F5_T7.csv") == 1);

    // Only the two output directories appeared next to the config.
    auto after = listing(root);
    for (const auto& name : before)
        after.erase(name);
    for (const auto& name : after)
        CHECK_MESSAGE((name.rfind("a", 0) == 0 || name.rfind("b", 0) == 0), name);

    std::ostringstream scored;
    const auto scores_before = slurp(fs::path(a) / "scores.csv");
    REQUIRE(execute(*parse({"score", "--out", a.c_str()}), scored, err) == 0);
    CHECK(slurp(fs::path(a) / "scores.csv") == scores_before);
    std::istringstream lines(scored.str());
    std::string alg, value;
    while (lines >> alg >> value) {
        const auto dot = value.find('.');
        REQUIRE(dot != std::string::npos);
        CHECK(value.size() - dot - 1 == 4);
    }
    CHECK(scored.str().find("qcsso ") != std::string::npos);

    std::ostringstream other;
    REQUIRE(execute(*parse({"run", "--config", cfg.c_str(), "--out", b.c_str(), "--seed", "8"}), other, err) == 0);
    CHECK(slurp(fs::path(a) / "ratios.csv") != slurp(fs::path(b) / "ratios.csv"));
}

TEST_CASE("run: command-line filters narrow the configured cases")
{
    const auto root = scratch_dir("filter");
    const auto cfg = write_config(root).string();
    const auto outdir = (root / "out").string();
    std::ostringstream out, err;
    REQUIRE(execute(*parse({"run", "--config", cfg.c_str(), "--out", outdir.c_str(), "--case", "F5",
                            "--optimizer", "pso_baseline"}),
                    out, err) == 0);
    CHECK(out.str().rfind("pso_baseline ", 0) == 0);
    CHECK(out.str().find("qcsso") == std::string::npos);
    const auto scores = slurp(fs::path(outdir) / "scores.csv");
    CHECK(scores.find("F5:T7") != std::string::npos);
    CHECK(scores.find("F1_10:T1") == std::string::npos);
}

TEST_CASE("run: a filter that selects nothing is an error")
{
    const auto root = scratch_dir("empty");
    const auto cfg = write_config(root).string();
    const auto outdir = (root / "out").string();
    CHECK(entry({"run", "--config", cfg.c_str(), "--out", outdir.c_str(), "--case", "F3"}) == exit_failure);
    CHECK(entry({"run", "--config", cfg.c_str(), "--out", outdir.c_str(), "--optimizer", "ssa_baseline"}) ==
          exit_failure);
    CHECK(!fs::exists(fs::path(outdir) / "scores.csv"));
}
