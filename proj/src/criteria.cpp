#include "measureval/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include "measureval/distributions.hpp"

namespace measureval {
namespace {

void check_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error(std::string(where) + ": alpha must lie in (0, 1)");
}

void check_count(const SampleSummary& s, int min_count, const char* where,
                 const char* which) {
    if (s.count < min_count)
        throw std::domain_error(std::string(where) + ": " + which + " run needs at least " +
                                std::to_string(min_count) + " values");
}

}  // namespace

double reference_t_statistic(const SampleSummary& ref, double test_mean, int n_test) {
    check_count(ref, 2, "reference_t_statistic", "reference");
    if (!(ref.sd > 0.0))
        throw std::domain_error("reference_t_statistic: degenerate reference run (sd = 0)");
    if (n_test < 1) throw std::domain_error("reference_t_statistic: n_test must be >= 1");
    const double big_n = ref.count;
    const double n = n_test;
    return std::sqrt(big_n * n / (big_n + n)) * (ref.mean - test_mean) / ref.sd;
}

AcceptanceInterval reference_acceptance_interval(const SampleSummary& ref, int n_test,
                                                 double alpha) {
    check_count(ref, 2, "reference_acceptance_interval", "reference");
    if (ref.sd < 0.0)
        throw std::domain_error("reference_acceptance_interval: negative sd");
    if (n_test < 1)
        throw std::domain_error("reference_acceptance_interval: n_test must be >= 1");
    check_alpha(alpha, "reference_acceptance_interval");
    const double t_crit = dist::student_t_quantile(1.0 - alpha / 2.0, ref.count - 1);
    const double half = t_crit * std::sqrt(1.0 / ref.count + 1.0 / n_test) * ref.sd;
    return AcceptanceInterval{ref.mean - half, ref.mean + half};
}

Verdict evaluate_reference_mean(const SampleSummary& ref, const SampleSummary& test,
                                double alpha) {
    check_count(test, 1, "evaluate_reference_mean", "test");
    const AcceptanceInterval interval =
        reference_acceptance_interval(ref, test.count, alpha);
    Verdict v;
    v.criterion = Criterion::ReferenceMean;
    v.statistic = test.mean;
    v.interval = interval;
    v.accepted = interval.contains(test.mean);
    v.alpha = alpha;
    v.df1 = ref.count - 1;
    return v;
}

double scale_factor_for_alpha(double alpha, int n) {
    if (n < 2) throw std::domain_error("scale_factor_for_alpha: n must be >= 2");
    check_alpha(alpha, "scale_factor_for_alpha");
    return dist::student_t_quantile(1.0 - alpha / 2.0, n - 1);
}

Verdict classical_error_interval_criterion(const SampleSummary& test, double mu_true,
                                           double alpha) {
    check_count(test, 2, "classical_error_interval_criterion", "test");
    if (!std::isfinite(mu_true))
        throw std::domain_error("classical_error_interval_criterion: mu_true must be finite");
    const double a = scale_factor_for_alpha(alpha, test.count);
    const double half = a * test.sd / std::sqrt(static_cast<double>(test.count));
    Verdict v;
    v.criterion = Criterion::ClassicalErrorInterval;
    v.statistic = mu_true;
    v.interval = AcceptanceInterval{test.mean - half, test.mean + half};
    v.accepted = v.interval.contains(mu_true);
    v.alpha = alpha;
    v.df1 = test.count - 1;
    return v;
}

Verdict welch_t_test(const SampleSummary& ref, const SampleSummary& test, double alpha) {
    check_count(ref, 2, "welch_t_test", "reference");
    check_count(test, 2, "welch_t_test", "test");
    check_alpha(alpha, "welch_t_test");
    if (ref.sd == 0.0 && test.sd == 0.0)
        throw std::domain_error("welch_t_test: both runs have zero sd");
    const double a = ref.sd * ref.sd / ref.count;
    const double b = test.sd * test.sd / test.count;
    const double t = (ref.mean - test.mean) / std::sqrt(a + b);
    const double df_raw =
        (a + b) * (a + b) / (a * a / (ref.count - 1) + b * b / (test.count - 1));
    // Snap near-integer values before the ceiling so that rounding fuzz in an
    // exactly integral df (e.g. equal variances, equal counts) cannot bump it.
    const double nearest = std::round(df_raw);
    const int df = (std::fabs(df_raw - nearest) < 1e-9 * std::max(1.0, df_raw))
                       ? static_cast<int>(nearest)
                       : static_cast<int>(std::ceil(df_raw));
    const double t_crit = dist::student_t_quantile(1.0 - alpha / 2.0, df);
    Verdict v;
    v.criterion = Criterion::WelchMean;
    v.statistic = t;
    v.interval = AcceptanceInterval{-t_crit, t_crit};
    v.accepted = v.interval.contains(t);
    v.alpha = alpha;
    v.df1 = df;
    return v;
}

Verdict variance_f_criterion(const SampleSummary& ref, const SampleSummary& test,
                             double alpha, VarianceTail tail) {
    check_count(ref, 2, "variance_f_criterion", "reference");
    check_count(test, 2, "variance_f_criterion", "test");
    check_alpha(alpha, "variance_f_criterion");
    if (!(ref.sd > 0.0))
        throw std::domain_error("variance_f_criterion: degenerate reference run (sd = 0)");
    const int df1 = test.count - 1;
    const int df2 = ref.count - 1;
    const double ratio = (test.sd * test.sd) / (ref.sd * ref.sd);
    AcceptanceInterval bounds;
    if (tail == VarianceTail::UpperOnly) {
        bounds = AcceptanceInterval{0.0, dist::f_quantile(1.0 - alpha, df1, df2)};
    } else {
        bounds = AcceptanceInterval{dist::f_quantile(alpha / 2.0, df1, df2),
                                    dist::f_quantile(1.0 - alpha / 2.0, df1, df2)};
    }
    Verdict v;
    v.criterion = Criterion::VarianceF;
    v.statistic = ratio;
    v.interval = bounds;
    v.accepted = bounds.contains(ratio);
    v.alpha = alpha;
    v.df1 = df1;
    v.df2 = df2;
    v.sd_interval = AcceptanceInterval{ref.sd * std::sqrt(bounds.lower),
                                       ref.sd * std::sqrt(bounds.upper)};
    return v;
}

Verdict combined_criterion(const SampleSummary& ref, const SampleSummary& test,
                           double alpha, VarianceTail tail) {
    check_alpha(alpha, "combined_criterion");
    const Verdict mean_v = evaluate_reference_mean(ref, test, alpha / 2.0);
    const Verdict var_v = variance_f_criterion(ref, test, alpha / 2.0, tail);
    const bool accepted = mean_v.accepted && var_v.accepted;
    // Surface whichever sub-test binds, keeping the Verdict invariant
    // accepted == interval.contains(statistic).
    Verdict v = (!mean_v.accepted || accepted) ? mean_v : var_v;
    v.criterion = Criterion::CombinedBonferroni;
    v.accepted = accepted;
    v.alpha = alpha;
    return v;
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::ReferenceMean: return "mean";
        case Criterion::ClassicalErrorInterval: return "classical";
        case Criterion::WelchMean: return "welch";
        case Criterion::VarianceF: return "variance";
        case Criterion::CombinedBonferroni: return "combined";
    }
    throw std::invalid_argument("criterion_name: unknown criterion");
}

Criterion criterion_from_name(const std::string& name) {
    if (name == "mean") return Criterion::ReferenceMean;
    if (name == "classical") return Criterion::ClassicalErrorInterval;
    if (name == "welch") return Criterion::WelchMean;
    if (name == "variance") return Criterion::VarianceF;
    if (name == "combined") return Criterion::CombinedBonferroni;
    throw std::invalid_argument("unknown criterion '" + name +
                                "' (expected mean, classical, welch, variance or combined)");
}

}  // namespace measureval
