#include "dynopt/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynopt::harness {

ErrorMatrix::ErrorMatrix(std::size_t runs, std::size_t changes)
    : runs_(runs), changes_(changes), e_(runs * changes, 0.0), r_(runs * changes, 1.0), s_(runs * changes)
{
}

ErrorMatrix ErrorMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    const std::size_t changes = rows.empty() ? 0 : rows.front().size();
    ErrorMatrix m(rows.size(), changes);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != changes)
            throw std::invalid_argument("ragged error matrix");
        for (std::size_t j = 0; j < changes; ++j)
            m.e_last(i, j) = rows[i][j];
    }
    return m;
}

namespace {

void require_data(const ErrorMatrix& m)
{
    if (m.empty())
        throw std::invalid_argument("empty error matrix");
}

template <typename Pick>
double average_of_rows(const ErrorMatrix& m, Pick pick)
{
    require_data(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m.runs(); ++i) {
        double v = m.e_last(i, 0);
        for (std::size_t j = 1; j < m.changes(); ++j)
            v = pick(v, m.e_last(i, j));
        total += v;
    }
    return total / static_cast<double>(m.runs());
}

bool valid_ratio(double r)
{
    return r > 0.0 && r <= 1.0;
}

} // namespace

double average_best(const ErrorMatrix& m)
{
    return average_of_rows(m, [](double a, double b) { return std::min(a, b); });
}

double average_worst(const ErrorMatrix& m)
{
    return average_of_rows(m, [](double a, double b) { return std::max(a, b); });
}

double average_mean(const ErrorMatrix& m)
{
    require_data(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m.runs(); ++i)
        for (std::size_t j = 0; j < m.changes(); ++j)
            total += m.e_last(i, j);
    return total / static_cast<double>(m.runs() * m.changes());
}

double std_dev(const ErrorMatrix& m)
{
    const double mean = average_mean(m);
    double sq = 0.0;
    for (std::size_t i = 0; i < m.runs(); ++i) {
        for (std::size_t j = 0; j < m.changes(); ++j) {
            const double d = m.e_last(i, j) - mean;
            sq += d * d;
        }
    }
    return std::sqrt(sq / static_cast<double>(m.runs() * m.changes()));
}

double case_score(const ErrorMatrix& m)
{
    require_data(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m.runs(); ++i) {
        for (std::size_t j = 0; j < m.changes(); ++j) {
            const double last = m.r_last(i, j);
            const auto& samples = m.samples(i, j);
            if (!valid_ratio(last))
                throw std::invalid_argument("ratio outside (0, 1]");
            double deficit = 0.0;
            for (double r : samples) {
                if (!valid_ratio(r))
                    throw std::invalid_argument("ratio outside (0, 1]");
                deficit += 1.0 - r;
            }
            if (!samples.empty())
                deficit /= static_cast<double>(samples.size());
            total += last / (1.0 + deficit);
        }
    }
    return total / static_cast<double>(m.runs() * m.changes());
}

CaseResult summarize(const ErrorMatrix& m)
{
    return {average_best(m), average_mean(m), average_worst(m), std_dev(m), case_score(m)};
}

double overall_score(const std::map<std::string, double>& scores,
                     const std::map<std::string, double>& weights)
{
    double total = 0.0;
    for (const auto& [id, score] : scores) {
        const auto it = weights.find(id);
        if (it == weights.end())
            throw std::invalid_argument("no weight for case '" + id + "'");
        total += it->second * score;
    }
    return total;
}

} // namespace dynopt::harness
