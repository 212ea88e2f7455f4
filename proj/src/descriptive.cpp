#include "measureval/descriptive.hpp"

#include <cmath>
#include <stdexcept>

namespace measureval {

SampleSummary summarize(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("summarize: at least 2 values are required");
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("summarize: non-finite value");
        sum += v;
    }
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    // Second pass over centered values; a single-pass sum of squares cancels
    // catastrophically when the mean dwarfs the spread.
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    return SampleSummary{static_cast<int>(values.size()), mean, sd};
}

double standard_error(const SampleSummary& summary) {
    if (summary.count < 2)
        throw std::invalid_argument("standard_error: at least 2 values are required");
    return summary.sd / std::sqrt(static_cast<double>(summary.count));
}

}  // namespace measureval
