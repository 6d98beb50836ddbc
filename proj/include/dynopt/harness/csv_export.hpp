#ifndef DYNOPT_HARNESS_CSV_EXPORT_HPP
#define DYNOPT_HARNESS_CSV_EXPORT_HPP

#include "dynopt/harness/experiment.hpp"

#include <map>
#include <string>
#include <vector>

namespace dynopt::harness {

/// Scores of one algorithm.
struct ScoreTable
{
    std::map<std::string, double> cases;     ///< case id -> score in [0, 1]
    std::map<std::string, double> functions; ///< variant -> sum of weight * score
    double overall = 0.0;                    ///< percentage points
};

/// By algorithm, in name order.
std::map<std::string, ScoreTable> score_tables(const std::vector<CaseOutcome>& outcomes,
                                               const std::map<std::string, double>& weights);

/// Name of the error table file for a function variant: errors_F1_10.csv.
std::string errors_file_name(gdbg::Problem p);

// Writers. Each throws std::runtime_error naming the path on I/O failure.

/// One errors_<F>.csv per function variant; header-only without data.
void write_error_tables(const std::vector<CaseOutcome>& outcomes, const std::string& dir);
/// scores.csv: `algorithm,case,score` rows per case, per variant and overall.
void write_scores(const std::map<std::string, ScoreTable>& tables, const std::string& dir);
/// ratios.csv: the raw per-window errors and ratios, enough to rescore.
void write_ratios(const std::vector<CaseOutcome>& outcomes, const std::string& dir);
/// Trace file of one run: the trajectory record lines.
void write_trace(const CaseOutcome& outcome, const optimizers::TrajectoryRecord& rec, const std::string& dir);

/// All three table kinds.
void write_results(const std::vector<CaseOutcome>& outcomes, const std::map<std::string, double>& weights,
                   const std::string& dir);

/// Reads ratios.csv back into outcomes with recomputed statistics.
std::vector<CaseOutcome> read_ratios(const std::string& path);

} // namespace dynopt::harness

#endif // DYNOPT_HARNESS_CSV_EXPORT_HPP
