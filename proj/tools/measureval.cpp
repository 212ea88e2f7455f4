#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "measureval/criteria.hpp"
#include "measureval/csv_io.hpp"
#include "measureval/distributions.hpp"
#include "measureval/json_io.hpp"
#include "measureval/simulation.hpp"

namespace {

using namespace measureval;

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_or_file(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw std::runtime_error(output + ": cannot open for writing");
    out << text;
}

std::string format_df(const Verdict& v) {
    std::string s = std::to_string(v.df1);
    if (v.df2 != 0) s += ", " + std::to_string(v.df2);
    return s;
}

VarianceTail parse_tail(const std::string& tail) {
    return tail == "two-sided" ? VarianceTail::TwoSided : VarianceTail::UpperOnly;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOptions {
    std::string reference_path;
    std::string test_path;
    double alpha = 0.05;
    std::vector<std::string> criteria{"mean"};
    std::string tail = "upper";
    double mu_true = std::numeric_limits<double>::quiet_NaN();
    bool have_mu = false;
    bool json = false;
    std::string output;
};

int run_evaluate(const EvaluateOptions& opt) {
    const MeasurementRun ref_run = read_measurement_file(opt.reference_path);
    const MeasurementRun test_run = read_measurement_file(opt.test_path);
    if (ref_run.size() < 2)
        throw std::runtime_error(opt.reference_path + ": insufficient data (need at least 2 values, got " +
                                 std::to_string(ref_run.size()) + ")");
    if (test_run.size() < 2)
        throw std::runtime_error(opt.test_path + ": insufficient data (need at least 2 values, got " +
                                 std::to_string(test_run.size()) + ")");
    const SampleSummary ref = summarize(ref_run);
    const SampleSummary test = summarize(test_run);
    const VarianceTail tail = parse_tail(opt.tail);

    std::vector<Verdict> verdicts;
    for (const std::string& name : opt.criteria) {
        const Criterion c = criterion_from_name(name);
        switch (c) {
            case Criterion::ReferenceMean:
                verdicts.push_back(evaluate_reference_mean(ref, test, opt.alpha));
                break;
            case Criterion::ClassicalErrorInterval:
                if (!opt.have_mu)
                    throw std::runtime_error(
                        "the classical criterion needs the known true value; pass --mu");
                verdicts.push_back(
                    classical_error_interval_criterion(test, opt.mu_true, opt.alpha));
                break;
            case Criterion::WelchMean:
                verdicts.push_back(welch_t_test(ref, test, opt.alpha));
                break;
            case Criterion::VarianceF:
                verdicts.push_back(variance_f_criterion(ref, test, opt.alpha, tail));
                break;
            case Criterion::CombinedBonferroni:
                verdicts.push_back(combined_criterion(ref, test, opt.alpha, tail));
                break;
        }
    }

    bool all_accepted = true;
    for (const Verdict& v : verdicts) all_accepted = all_accepted && v.accepted;

    const std::string timestamp = utc_timestamp();
    if (opt.json) {
        nlohmann::json j;
        j["timestamp"] = timestamp;
        j["alpha"] = opt.alpha;
        j["reference"] = ref;
        j["reference"]["path"] = opt.reference_path;
        j["test"] = test;
        j["test"]["path"] = opt.test_path;
        j["verdicts"] = verdicts;
        j["all_accepted"] = all_accepted;
        write_text_or_file(opt.output, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        char buf[256];
        std::snprintf(buf, sizeof buf, "reference: %s (count=%d, mean=%.6f, sd=%.6f)\n",
                      opt.reference_path.c_str(), ref.count, ref.mean, ref.sd);
        os << buf;
        std::snprintf(buf, sizeof buf, "test:      %s (count=%d, mean=%.6f, sd=%.6f)\n",
                      opt.test_path.c_str(), test.count, test.mean, test.sd);
        os << buf;
        std::snprintf(buf, sizeof buf, "alpha = %g    evaluated %s\n\n", opt.alpha,
                      timestamp.c_str());
        os << buf;
        std::snprintf(buf, sizeof buf, "%-10s %-7s %14s %28s %8s\n", "criterion", "result",
                      "statistic", "acceptance interval", "df");
        os << buf;
        for (const Verdict& v : verdicts) {
            std::snprintf(buf, sizeof buf, "%-10s %-7s %14.6f [%12.6f, %12.6f] %8s\n",
                          criterion_name(v.criterion), v.accepted ? "accept" : "reject",
                          v.statistic, v.interval.lower, v.interval.upper,
                          format_df(v).c_str());
            os << buf;
            if (v.sd_interval) {
                std::snprintf(buf, sizeof buf,
                              "%-10s %-7s in s_T scale: [%.6f, %.6f]\n", "", "",
                              v.sd_interval->lower, v.sd_interval->upper);
                os << buf;
            }
        }
        os << "\noverall: " << (all_accepted ? "accept" : "reject") << "\n";
        write_text_or_file(opt.output, os.str());
    }
    return all_accepted ? 0 : 2;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
    int table = 0;  // 0 = custom run from the flags below
    std::string criterion = "mean";
    double mu_ref = 21.35;
    double sigma_ref = 0.01;
    double mu_test = 21.35;
    double sigma_test = 0.01;
    int n_ref = 10;
    int n_test = 3;
    double alpha = 0.05;
    std::int64_t reps = 1'000'000;
    std::uint64_t seed = 42;
    std::string tail = "upper";
    std::string reference_mode = "fresh";
    bool json = false;
    std::string output;
};

struct TableRow {
    double mu_test;
    double sigma_test;
    double alpha;
};

int run_simulate(const SimulateOptions& opt) {
    SimulationConfig base;
    base.seed = opt.seed;
    base.tail = parse_tail(opt.tail);
    base.reference_mode = opt.reference_mode == "fixed" ? ReferenceMode::FixedAcrossReplications
                                                        : ReferenceMode::FreshPerReplication;

    std::vector<TableRow> rows;
    int decimals = 5;
    if (opt.table != 0) {
        base.mu_ref = 21.35;
        base.sigma_ref = 0.01;
        base.n_ref = 10;
        base.n_test = 3;
        base.replications = 1'000'000;
        switch (opt.table) {
            case 1:
                base.criterion = Criterion::ReferenceMean;
                for (double a : {0.001, 0.010, 0.050}) rows.push_back({21.35, 0.01, a});
                for (double a : {0.001, 0.010, 0.050}) rows.push_back({21.37, 0.01, a});
                for (double a : {0.001, 0.010, 0.050}) rows.push_back({21.35, 0.02, a});
                break;
            case 2:
                base.criterion = Criterion::ClassicalErrorInterval;
                rows.push_back({21.35, 0.01, 0.010});
                rows.push_back({21.37, 0.01, 0.010});
                rows.push_back({21.35, 0.02, 0.010});
                break;
            case 3:
                base.criterion = Criterion::WelchMean;
                decimals = 6;
                for (double a : {0.001, 0.010, 0.050}) rows.push_back({21.35, 0.01, a});
                break;
            default:
                throw std::runtime_error("--table must be 1, 2 or 3");
        }
    } else {
        base.criterion = criterion_from_name(opt.criterion);
        base.mu_ref = opt.mu_ref;
        base.sigma_ref = opt.sigma_ref;
        base.n_ref = opt.n_ref;
        base.n_test = opt.n_test;
        base.replications = opt.reps;
        rows.push_back({opt.mu_test, opt.sigma_test, opt.alpha});
    }

    std::vector<RejectionEstimate> estimates;
    estimates.reserve(rows.size());
    for (const TableRow& row : rows) {
        SimulationConfig cfg = base;
        cfg.mu_test = row.mu_test;
        cfg.sigma_test = row.sigma_test;
        cfg.alpha = row.alpha;
        estimates.push_back(estimate_rejection_ratio(cfg));
    }

    if (opt.json) {
        nlohmann::json j;
        j["config"] = base;
        j["rows"] = nlohmann::json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            j["rows"].push_back({{"mu_test", rows[i].mu_test},
                                 {"sigma_test", rows[i].sigma_test},
                                 {"alpha", rows[i].alpha},
                                 {"estimate", estimates[i]}});
        }
        write_text_or_file(opt.output, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%10s %10s %7s %10s %10s %10s\n", "mu_test", "sigma_test",
                      "alpha", "rho_pt", "rho_lo", "rho_hi");
        os << buf;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%10.6g %10.6g %7.3f %10.*f %10.*f %10.*f\n",
                          rows[i].mu_test, rows[i].sigma_test, rows[i].alpha, decimals,
                          estimates[i].point, decimals, estimates[i].lower, decimals,
                          estimates[i].upper);
            os << buf;
        }
        write_text_or_file(opt.output, os.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// critical
// ---------------------------------------------------------------------------

struct CriticalOptions {
    std::string distribution;
    double alpha = 0.05;
    int df = 0;
    int df1 = 0;
    int df2 = 0;
    bool two_sided = false;
    bool upper = false;
};

int run_critical(const CriticalOptions& opt) {
    if (!(opt.alpha > 0.0) || !(opt.alpha < 1.0))
        throw std::runtime_error("critical: alpha must lie in (0, 1)");
    char buf[128];
    if (opt.distribution == "t") {
        if (opt.df < 1) throw std::runtime_error("critical t: pass --df >= 1");
        const bool two_sided = !opt.upper;  // two-sided is the default for t
        const double p = two_sided ? 1.0 - opt.alpha / 2.0 : 1.0 - opt.alpha;
        std::snprintf(buf, sizeof buf, "%.6f\n", dist::student_t_quantile(p, opt.df));
        std::cout << buf;
    } else {
        if (opt.df1 < 1 || opt.df2 < 1) throw std::runtime_error("critical f: pass --df1 and --df2");
        if (opt.two_sided) {
            std::snprintf(buf, sizeof buf, "%.6f %.6f\n",
                          dist::f_quantile(opt.alpha / 2.0, opt.df1, opt.df2),
                          dist::f_quantile(1.0 - opt.alpha / 2.0, opt.df1, opt.df2));
        } else {  // upper tail is the default for f
            std::snprintf(buf, sizeof buf, "%.6f\n",
                          dist::f_quantile(1.0 - opt.alpha, opt.df1, opt.df2));
        }
        std::cout << buf;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measureval - statistical quality assessment of measurement processes"};
    app.require_subcommand(1);

    EvaluateOptions ev;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Evaluate a test measurement run against a reference run");
    evaluate->add_option("reference", ev.reference_path, "reference measurement file (one value per line)")
        ->required();
    evaluate->add_option("test", ev.test_path, "test measurement file (one value per line)")
        ->required();
    evaluate->add_option("--alpha", ev.alpha, "significance level")->capture_default_str();
    evaluate
        ->add_option("--criteria", ev.criteria,
                     "criteria to apply: mean, classical, welch, variance, combined")
        ->delimiter(',')
        ->capture_default_str();
    evaluate->add_option("--tail", ev.tail, "variance criterion tail")
        ->check(CLI::IsMember({"upper", "two-sided"}))
        ->capture_default_str();
    CLI::Option* mu_opt =
        evaluate->add_option("--mu", ev.mu_true, "known true value (classical criterion)");
    evaluate->add_flag("--json", ev.json, "machine-readable output");
    evaluate->add_option("--output", ev.output, "write the report to a file");

    SimulateOptions sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Estimate rejection ratios by Monte Carlo simulation");
    simulate->add_option("--table", sim.table, "preset 1, 2 or 3 (fixes all parameters)")
        ->check(CLI::Range(1, 3));
    simulate->add_option("--criterion", sim.criterion, "criterion to simulate")
        ->check(CLI::IsMember({"mean", "classical", "welch", "variance", "combined"}))
        ->capture_default_str();
    simulate->add_option("--mu-ref", sim.mu_ref, "reference process mean")->capture_default_str();
    simulate->add_option("--sigma-ref", sim.sigma_ref, "reference process sd")->capture_default_str();
    simulate->add_option("--mu-test", sim.mu_test, "test process mean")->capture_default_str();
    simulate->add_option("--sigma-test", sim.sigma_test, "test process sd")->capture_default_str();
    simulate->add_option("--n-ref", sim.n_ref, "reference sample size N")->capture_default_str();
    simulate->add_option("--n-test", sim.n_test, "test sample size n")->capture_default_str();
    simulate->add_option("--alpha", sim.alpha, "significance level")->capture_default_str();
    simulate->add_option("--reps", sim.reps, "replications")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    simulate->add_option("--tail", sim.tail, "variance criterion tail")
        ->check(CLI::IsMember({"upper", "two-sided"}))
        ->capture_default_str();
    simulate->add_option("--reference-mode", sim.reference_mode, "fresh or fixed reference run")
        ->check(CLI::IsMember({"fresh", "fixed"}))
        ->capture_default_str();
    simulate->add_flag("--json", sim.json, "machine-readable output");
    simulate->add_option("--output", sim.output, "write the table to a file");

    CriticalOptions crit;
    CLI::App* critical = app.add_subcommand("critical", "Print a t or F critical value");
    critical->add_option("distribution", crit.distribution, "t or f")
        ->required()
        ->check(CLI::IsMember({"t", "f"}));
    critical->add_option("--alpha", crit.alpha, "significance level")->required();
    critical->add_option("--df", crit.df, "degrees of freedom (t)");
    critical->add_option("--df1", crit.df1, "numerator degrees of freedom (f)");
    critical->add_option("--df2", crit.df2, "denominator degrees of freedom (f)");
    critical->add_flag("--two-sided", crit.two_sided, "two-sided critical value");
    critical->add_flag("--upper", crit.upper, "upper-tail critical value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (evaluate->parsed()) {
            ev.have_mu = mu_opt->count() > 0;
            return run_evaluate(ev);
        }
        if (simulate->parsed()) return run_simulate(sim);
        if (critical->parsed()) return run_critical(crit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
