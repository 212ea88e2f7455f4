#include "measureval/distributions.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace measureval::dist {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kSqrt2 = 1.41421356237309504880168872421;

// Lanczos coefficients, g = 7, 9 terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

void check_df(int df, const char* where) {
    if (df < 1) throw std::domain_error(std::string(where) + ": df must be >= 1");
}

void check_open_probability(double p, const char* where) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error(std::string(where) + ": p must lie strictly inside (0, 1)");
}

double ln_beta(double a, double b) { return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b); }

// Continued fraction for the incomplete beta function (modified Lentz),
// valid for x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    constexpr int kMaxIter = 10000;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("regularized incomplete beta: continued fraction did not converge");
}

// I_x(a, b) with the complement of x supplied by the caller, so that callers
// that know 1-x exactly (t and F transforms) do not lose tail precision.
double ibeta(double a, double b, double x, double xc) {
    if (x <= 0.0) return 0.0;
    if (xc <= 0.0) return 1.0;
    const double ln_front = a * std::log(x) + b * std::log(xc) - ln_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(ln_front) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * beta_cf(b, a, xc) / b;
}

double student_t_pdf(double t, double v) {
    const double lp = ln_gamma(0.5 * (v + 1.0)) - ln_gamma(0.5 * v) -
                      0.5 * std::log(v * kPi) - 0.5 * (v + 1.0) * std::log1p(t * t / v);
    return std::exp(lp);
}

double f_pdf(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    const double lp = 0.5 * d1 * std::log(d1 / d2) + (0.5 * d1 - 1.0) * std::log(x) -
                      0.5 * (d1 + d2) * std::log1p(d1 * x / d2) - ln_beta(0.5 * d1, 0.5 * d2);
    return std::exp(lp);
}

// Safeguarded Newton inside a cdf bracket: cdf(lo) <= p <= cdf(hi).
template <typename Cdf, typename Pdf>
double invert_cdf(double p, double lo, double hi, const Cdf& cdf, const Pdf& pdf) {
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = cdf(x) - p;
        if (f == 0.0) return x;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        double next = 0.0;
        const double slope = pdf(x);
        if (slope > 0.0) {
            next = x - f / slope;
        }
        if (!(slope > 0.0) || !(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::fabs(next - x);
        x = next;
        if (std::fabs(f) < 1e-14 && step <= 1e-13 * (std::fabs(x) + 1e-300)) break;
        if (hi - lo <= 4.0 * std::fabs(x) * 1e-16 + 1e-300) break;
    }
    return x;
}

// Tiny thread-local memo for quantile calls. Simulation loops request the
// same (p, df) critical values millions of times; caching keeps the criteria
// functions as the single evaluation path without paying the inversion cost
// per replication.
struct QuantileKey {
    std::uint8_t kind = 0;  // 0 empty, 1 student t, 2 F
    double p = 0.0;
    int df1 = 0;
    int df2 = 0;
    double value = 0.0;
};

template <typename Compute>
double memoized_quantile(std::uint8_t kind, double p, int df1, int df2,
                         const Compute& compute) {
    thread_local std::array<QuantileKey, 64> cache{};
    thread_local unsigned next_slot = 0;
    for (const auto& e : cache) {
        if (e.kind == kind && e.p == p && e.df1 == df1 && e.df2 == df2) return e.value;
    }
    const double value = compute();
    cache[next_slot] = {kind, p, df1, df2, value};
    next_slot = (next_slot + 1) % cache.size();
    return value;
}

}  // namespace

double ln_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("ln_gamma: argument must be positive and finite");
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        return std::log(kPi / std::sin(kPi * x)) - ln_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double ag = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) ag += kLanczos[k] / (z + double(k));
    const double t = z + 7.5;
    return (z + 0.5) * std::log(t) - t + kLnSqrt2Pi + std::log(ag);
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!std::isfinite(a) || a <= 0.0 || !std::isfinite(b) || b <= 0.0)
        throw std::domain_error("regularized_incomplete_beta: a and b must be positive");
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
        throw std::domain_error("regularized_incomplete_beta: x must lie in [0, 1]");
    return ibeta(a, b, x, 1.0 - x);
}

double student_t_cdf(double t, int df) {
    check_df(df, "student_t_cdf");
    if (!std::isfinite(t)) throw std::domain_error("student_t_cdf: t must be finite");
    if (t == 0.0) return 0.5;
    const double v = df;
    const double t2 = t * t;
    double tail;  // P(T >= |t|)
    if (v > 2.0 * t2) {
        // Small |t|: v/(v+t^2) is close to 1, so work with the complement.
        const double y = t2 / (v + t2);
        const double yc = v / (v + t2);
        tail = 0.5 * (1.0 - ibeta(0.5, 0.5 * v, y, yc));
    } else {
        const double x = v / (v + t2);
        const double xc = t2 / (v + t2);
        tail = 0.5 * ibeta(0.5 * v, 0.5, x, xc);
    }
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, int df) {
    check_df(df, "student_t_quantile");
    check_open_probability(p, "student_t_quantile");
    if (p == 0.5) return 0.0;
    return memoized_quantile(1, p, df, 0, [&] {
        const bool flip = p < 0.5;
        const double pu = flip ? 1.0 - p : p;
        const double v = df;
        double hi = 1.0;
        while (student_t_cdf(hi, df) < pu) hi *= 2.0;
        const double q = invert_cdf(
            pu, 0.0, hi, [&](double t) { return student_t_cdf(t, df); },
            [&](double t) { return student_t_pdf(t, v); });
        return flip ? -q : q;
    });
}

double f_cdf(double x, int df1, int df2) {
    check_df(df1, "f_cdf");
    check_df(df2, "f_cdf");
    if (std::isnan(x) || x < 0.0) throw std::domain_error("f_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double d1 = df1;
    const double d2 = df2;
    const double y = d1 * x / (d1 * x + d2);
    const double yc = d2 / (d1 * x + d2);
    return ibeta(0.5 * d1, 0.5 * d2, y, yc);
}

double f_quantile(double p, int df1, int df2) {
    check_df(df1, "f_quantile");
    check_df(df2, "f_quantile");
    check_open_probability(p, "f_quantile");
    return memoized_quantile(2, p, df1, df2, [&] {
        const double d1 = df1;
        const double d2 = df2;
        double hi = 1.0;
        while (f_cdf(hi, df1, df2) < p) hi *= 2.0;
        return invert_cdf(
            p, 0.0, hi, [&](double x) { return f_cdf(x, df1, df2); },
            [&](double x) { return f_pdf(x, d1, d2); });
    });
}

double standard_normal_cdf(double z) {
    if (!std::isfinite(z)) throw std::domain_error("standard_normal_cdf: z must be finite");
    return 0.5 * std::erfc(-z / kSqrt2);
}

}  // namespace measureval::dist
