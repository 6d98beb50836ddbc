#ifndef DYNOPT_HARNESS_METRICS_HPP
#define DYNOPT_HARNESS_METRICS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dynopt::harness {

/// Errors and ratio samples of one case: runs x changes cells.
///
/// Storage is row-major by run. samples(i, j) holds the S in-window
/// ratios of run i, window j.
class ErrorMatrix
{
public:
    ErrorMatrix() = default;
    ErrorMatrix(std::size_t runs, std::size_t changes);

    /// Builds an error-only matrix (no ratios) from nested rows.
    static ErrorMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t runs() const { return runs_; }
    std::size_t changes() const { return changes_; }
    bool empty() const { return runs_ == 0 || changes_ == 0; }

    double& e_last(std::size_t run, std::size_t change) { return e_[run * changes_ + change]; }
    double e_last(std::size_t run, std::size_t change) const { return e_[run * changes_ + change]; }
    double& r_last(std::size_t run, std::size_t change) { return r_[run * changes_ + change]; }
    double r_last(std::size_t run, std::size_t change) const { return r_[run * changes_ + change]; }
    std::vector<double>& samples(std::size_t run, std::size_t change) { return s_[run * changes_ + change]; }
    const std::vector<double>& samples(std::size_t run, std::size_t change) const
    {
        return s_[run * changes_ + change];
    }

private:
    std::size_t runs_ = 0;
    std::size_t changes_ = 0;
    std::vector<double> e_;
    std::vector<double> r_;
    std::vector<std::vector<double>> s_;
};

// The four error statistics. All throw std::invalid_argument on an empty
// matrix.

/// Mean over runs of the per-run minimum error.
double average_best(const ErrorMatrix& m);
/// Mean of all errors.
double average_mean(const ErrorMatrix& m);
/// Mean over runs of the per-run maximum error.
double average_worst(const ErrorMatrix& m);
/// Population standard deviation of all errors.
double std_dev(const ErrorMatrix& m);

/// Mean over cells of r_last / (1 + mean(1 - r_s)). Throws
/// std::invalid_argument if any ratio lies outside (0, 1].
double case_score(const ErrorMatrix& m);

struct CaseResult
{
    double avg_best = 0.0;
    double avg_mean = 0.0;
    double avg_worst = 0.0;
    double std = 0.0;
    double score = 0.0;
};

CaseResult summarize(const ErrorMatrix& m);

/// Sum of weight * score in percentage points. Throws
/// std::invalid_argument when a scored case has no weight.
double overall_score(const std::map<std::string, double>& scores,
                     const std::map<std::string, double>& weights);

} // namespace dynopt::harness

#endif // DYNOPT_HARNESS_METRICS_HPP
