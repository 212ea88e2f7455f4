#ifndef MEASUREVAL_CRITERIA_HPP
#define MEASUREVAL_CRITERIA_HPP

#include <optional>
#include <string>

#include "measureval/descriptive.hpp"

namespace measureval {

enum class Criterion {
    ReferenceMean,
    ClassicalErrorInterval,
    WelchMean,
    VarianceF,
    CombinedBonferroni,
};

/// Whether a quality loss can only inflate the variance, or move it both ways.
enum class VarianceTail { UpperOnly, TwoSided };

/// Closed interval of statistic values for which the process is accepted.
struct AcceptanceInterval {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double x) const { return lower <= x && x <= upper; }
    double half_width() const { return 0.5 * (upper - lower); }
};

/// Outcome of one criterion, with the statistic and bounds that decided it.
/// Invariant: accepted == interval.contains(statistic); endpoints accept.
struct Verdict {
    Criterion criterion = Criterion::ReferenceMean;
    bool accepted = false;
    double statistic = 0.0;
    AcceptanceInterval interval;
    double alpha = 0.0;
    int df1 = 0;  ///< degrees of freedom behind the critical value
    int df2 = 0;  ///< second df for F-based criteria, 0 otherwise
    /// Variance criterion only: the acceptance bounds mapped to the s_T scale.
    std::optional<AcceptanceInterval> sd_interval;
};

/// t statistic comparing a test-run mean against a reference run:
/// t = (m_R - m_T) * sqrt(N*n/(N+n)) / s_R.
double reference_t_statistic(const SampleSummary& ref, double test_mean, int n_test);

/// Acceptance interval for the test-run mean,
/// m_R +- t_{1-alpha/2, N-1} * sqrt(1/N + 1/n) * s_R.
/// Depends on the reference run only; a fixed reference yields a fixed interval.
AcceptanceInterval reference_acceptance_interval(const SampleSummary& ref, int n_test,
                                                 double alpha);

/// Reference-based mean criterion: accept iff the test mean falls inside
/// reference_acceptance_interval.
Verdict evaluate_reference_mean(const SampleSummary& ref, const SampleSummary& test,
                                double alpha);

/// Scale factor a with P(t in [-a, a]) = 1 - alpha for a t variable with
/// n-1 degrees of freedom, i.e. the exact t quantile at 1 - alpha/2.
double scale_factor_for_alpha(double alpha, int n);

/// Classical scaled-error-interval criterion: accept iff the known true value
/// lies in m_T +- a * s_T/sqrt(n). Built from the run under test alone.
Verdict classical_error_interval_criterion(const SampleSummary& test, double mu_true,
                                           double alpha);

/// Two-sample t test for unequal variances with Welch-Satterthwaite degrees
/// of freedom, rounded up to the next integer.
Verdict welch_t_test(const SampleSummary& ref, const SampleSummary& test, double alpha);

/// F criterion on the variance ratio s_T^2/s_R^2 against F(n-1, N-1).
Verdict variance_f_criterion(const SampleSummary& ref, const SampleSummary& test,
                             double alpha, VarianceTail tail);

/// Mean and variance criteria at alpha/2 each; accept iff both accept.
Verdict combined_criterion(const SampleSummary& ref, const SampleSummary& test,
                           double alpha, VarianceTail tail);

/// Short stable name ("mean", "classical", "welch", "variance", "combined").
const char* criterion_name(Criterion c);

/// Inverse of criterion_name; throws std::invalid_argument on unknown names.
Criterion criterion_from_name(const std::string& name);

}  // namespace measureval

#endif
