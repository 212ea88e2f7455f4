#ifndef MEASUREVAL_DESCRIPTIVE_HPP
#define MEASUREVAL_DESCRIPTIVE_HPP

#include <span>
#include <vector>

namespace measureval {

/// One measurement run: the raw outcomes, in recording order.
using MeasurementRun = std::vector<double>;

/// Count, mean and unbiased sample standard deviation of a run.
struct SampleSummary {
    int count = 0;
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and (n-1)-divisor standard deviation, computed in two passes.
/// Requires at least two finite values.
SampleSummary summarize(std::span<const double> values);

/// Standard deviation of the mean, sd / sqrt(count).
double standard_error(const SampleSummary& summary);

}  // namespace measureval

#endif
