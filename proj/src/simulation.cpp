#include "measureval/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace measureval {
namespace {

constexpr double kZ95 = 1.959963984540054;  // standard normal quantile at 0.975

// Stream reserved for the shared reference run in FixedAcrossReplications mode.
constexpr std::uint64_t kFixedReferenceStream = ~std::uint64_t{0};

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void validate(const SimulationConfig& cfg) {
    if (!(cfg.sigma_ref > 0.0) || !std::isfinite(cfg.sigma_ref))
        throw std::invalid_argument("simulation: sigma_ref must be positive");
    if (!(cfg.sigma_test > 0.0) || !std::isfinite(cfg.sigma_test))
        throw std::invalid_argument("simulation: sigma_test must be positive");
    if (!std::isfinite(cfg.mu_ref) || !std::isfinite(cfg.mu_test))
        throw std::invalid_argument("simulation: means must be finite");
    if (cfg.replications < 1)
        throw std::invalid_argument("simulation: replications must be >= 1");
    if (cfg.n_ref < 2) throw std::invalid_argument("simulation: n_ref must be >= 2");
    const int min_n_test = cfg.criterion == Criterion::ReferenceMean ? 1 : 2;
    if (cfg.n_test < min_n_test)
        throw std::invalid_argument("simulation: n_test must be >= " +
                                    std::to_string(min_n_test) + " for this criterion");
    if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
        throw std::invalid_argument("simulation: alpha must lie in (0, 1)");
}

SampleSummary summarize_test_run(const MeasurementRun& run) {
    if (run.size() == 1) return SampleSummary{1, run[0], 0.0};
    return summarize(run);
}

bool replication_rejects(const SimulationConfig& cfg, std::int64_t index,
                         const SampleSummary* fixed_ref) {
    SeededGenerator gen(cfg.seed, static_cast<std::uint64_t>(index));
    SampleSummary ref;
    if (cfg.criterion != Criterion::ClassicalErrorInterval) {
        ref = fixed_ref ? *fixed_ref
                        : summarize(sample_normal(gen, cfg.mu_ref, cfg.sigma_ref, cfg.n_ref));
    }
    const SampleSummary test =
        summarize_test_run(sample_normal(gen, cfg.mu_test, cfg.sigma_test, cfg.n_test));
    Verdict v;
    switch (cfg.criterion) {
        case Criterion::ReferenceMean:
            v = evaluate_reference_mean(ref, test, cfg.alpha);
            break;
        case Criterion::ClassicalErrorInterval:
            v = classical_error_interval_criterion(test, cfg.mu_ref, cfg.alpha);
            break;
        case Criterion::WelchMean:
            v = welch_t_test(ref, test, cfg.alpha);
            break;
        case Criterion::VarianceF:
            v = variance_f_criterion(ref, test, cfg.alpha, cfg.tail);
            break;
        case Criterion::CombinedBonferroni:
            v = combined_criterion(ref, test, cfg.alpha, cfg.tail);
            break;
    }
    return !v.accepted;
}

// Splits [0, total) into one contiguous chunk per worker and runs
// fn(worker, begin, end) on each. Rethrows the first failure after joining.
template <typename ChunkFn>
void run_chunks(std::int64_t total, unsigned workers, const ChunkFn& fn) {
    if (workers <= 1) {
        fn(0u, std::int64_t{0}, total);
        return;
    }
    const std::int64_t chunk = (total + workers - 1) / workers;
    std::mutex error_mutex;
    std::optional<std::string> first_error;
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        const std::int64_t begin = std::min<std::int64_t>(total, w * chunk);
        const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = e.what();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) throw std::runtime_error(*first_error);
}

}  // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed) + stream)) {}

std::uint64_t SeededGenerator::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SeededGenerator::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededGenerator::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, w;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        w = u * u + v * v;
    } while (w >= 1.0 || w == 0.0);
    const double f = std::sqrt(-2.0 * std::log(w) / w);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

MeasurementRun sample_normal(SeededGenerator& gen, double mu, double sigma, int count) {
    if (count < 1) throw std::invalid_argument("sample_normal: count must be >= 1");
    if (sigma < 0.0) throw std::invalid_argument("sample_normal: sigma must be >= 0");
    MeasurementRun run(static_cast<std::size_t>(count));
    if (sigma == 0.0) {
        std::fill(run.begin(), run.end(), mu);
        return run;
    }
    for (double& x : run) x = mu + sigma * gen.next_normal();
    return run;
}

RejectionEstimate wilson_interval(std::int64_t successes, std::int64_t trials) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    RejectionEstimate e;
    e.point = p;
    // center - half is 0 (and center + half is 1) in exact arithmetic at the
    // boundary counts; clamp so float residue cannot leak through
    e.lower = successes == 0 ? 0.0 : std::max(0.0, center - half);
    e.upper = successes == trials ? 1.0 : std::min(1.0, center + half);
    e.rejections = successes;
    e.replications = trials;
    return e;
}

RejectionEstimate estimate_rejection_ratio(const SimulationConfig& config, unsigned workers) {
    validate(config);
    std::optional<SampleSummary> fixed_ref;
    if (config.reference_mode == ReferenceMode::FixedAcrossReplications &&
        config.criterion != Criterion::ClassicalErrorInterval) {
        SeededGenerator gen(config.seed, kFixedReferenceStream);
        fixed_ref = summarize(sample_normal(gen, config.mu_ref, config.sigma_ref, config.n_ref));
    }
    const SampleSummary* fixed_ptr = fixed_ref ? &*fixed_ref : nullptr;
    const unsigned n_workers = resolve_worker_count(workers);
    std::vector<std::int64_t> counts(n_workers, 0);
    run_chunks(config.replications, n_workers,
               [&](unsigned w, std::int64_t begin, std::int64_t end) {
                   std::int64_t local = 0;
                   for (std::int64_t i = begin; i < end; ++i) {
                       try {
                           if (replication_rejects(config, i, fixed_ptr)) ++local;
                       } catch (const std::exception& e) {
                           throw std::runtime_error("replication " + std::to_string(i) + ": " +
                                                    e.what());
                       }
                   }
                   counts[w] = local;
               });
    std::int64_t rejected = 0;
    for (std::int64_t c : counts) rejected += c;
    return wilson_interval(rejected, config.replications);
}

std::vector<double> empirical_statistic_distribution(const SimulationConfig& config,
                                                     std::int64_t reps, unsigned workers) {
    validate(config);
    if (reps < 1)
        throw std::invalid_argument("empirical_statistic_distribution: reps must be >= 1");
    if (config.mu_test != config.mu_ref || config.sigma_test != config.sigma_ref)
        throw std::invalid_argument(
            "empirical_statistic_distribution: requires a null-hypothesis config "
            "(mu_test == mu_ref, sigma_test == sigma_ref)");
    std::vector<double> stats(static_cast<std::size_t>(reps));
    run_chunks(reps, resolve_worker_count(workers),
               [&](unsigned, std::int64_t begin, std::int64_t end) {
                   for (std::int64_t i = begin; i < end; ++i) {
                       try {
                           SeededGenerator gen(config.seed, static_cast<std::uint64_t>(i));
                           const SampleSummary ref = summarize(
                               sample_normal(gen, config.mu_ref, config.sigma_ref, config.n_ref));
                           const MeasurementRun test = sample_normal(
                               gen, config.mu_test, config.sigma_test, config.n_test);
                           stats[static_cast<std::size_t>(i)] = reference_t_statistic(
                               ref, summarize_test_run(test).mean, config.n_test);
                       } catch (const std::exception& e) {
                           throw std::runtime_error("replication " + std::to_string(i) + ": " +
                                                    e.what());
                       }
                   }
               });
    return stats;
}

unsigned resolve_worker_count(unsigned requested) {
    unsigned workers =
        requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MEASUREVAL_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1)
            workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return std::max(1u, workers);
}

}  // namespace measureval
