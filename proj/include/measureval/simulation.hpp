#ifndef MEASUREVAL_SIMULATION_HPP
#define MEASUREVAL_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "measureval/criteria.hpp"
#include "measureval/descriptive.hpp"

namespace measureval {

/// Deterministic 64-bit generator. Identical (seed, stream) pairs produce
/// identical sequences on every platform; replications draw from disjoint
/// streams so results do not depend on execution order.
class SeededGenerator {
public:
    SeededGenerator(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform draw in [0, 1) with 53 random bits.
    double next_unit();
    /// Standard normal draw (Marsaglia polar rejection, pairs cached).
    double next_normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// `count` independent draws from N(mu, sigma^2); sigma = 0 gives a constant run.
MeasurementRun sample_normal(SeededGenerator& gen, double mu, double sigma, int count);

/// Whether each replication redraws the reference run or all replications
/// share one reference run (the evaluate-many-students workflow).
enum class ReferenceMode { FreshPerReplication, FixedAcrossReplications };

struct SimulationConfig {
    double mu_ref = 21.35;
    double sigma_ref = 0.01;
    double mu_test = 21.35;
    double sigma_test = 0.01;
    int n_ref = 10;
    int n_test = 3;
    double alpha = 0.05;
    std::int64_t replications = 1'000'000;
    std::uint64_t seed = 42;
    Criterion criterion = Criterion::ReferenceMean;
    VarianceTail tail = VarianceTail::UpperOnly;
    ReferenceMode reference_mode = ReferenceMode::FreshPerReplication;
};

/// Point and 95% Wilson interval estimate of a rejection ratio.
struct RejectionEstimate {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t rejections = 0;
    std::int64_t replications = 0;
};

/// 95% Wilson score interval for a binomial proportion.
RejectionEstimate wilson_interval(std::int64_t successes, std::int64_t trials);

/// Monte Carlo estimate of the rejection ratio of config.criterion under the
/// configured truth/test parameters. The classical criterion tests against
/// mu_ref as the known true value. Bit-identical for a fixed config no matter
/// how many workers run it; workers = 0 picks the hardware concurrency,
/// capped by the MEASUREVAL_THREADS environment variable.
RejectionEstimate estimate_rejection_ratio(const SimulationConfig& config,
                                           unsigned workers = 0);

/// Simulated values of the reference t statistic under the null hypothesis
/// (config must have mu_test == mu_ref and sigma_test == sigma_ref), for
/// goodness-of-fit checks against Student's t with n_ref - 1 df.
std::vector<double> empirical_statistic_distribution(const SimulationConfig& config,
                                                     std::int64_t reps,
                                                     unsigned workers = 0);

/// Worker count actually used for `requested` (0 = auto), after the
/// MEASUREVAL_THREADS cap.
unsigned resolve_worker_count(unsigned requested);

}  // namespace measureval

#endif
