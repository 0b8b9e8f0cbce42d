#pragma once

// Brute-force simulation of test-retest studies and the longitudinal
// decisions that use their RC. Independent of the closed forms it checks,
// except for reusing normal_quantile to draw normal variates.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "repeatkit/types.hpp"

namespace repeatkit::mc {

struct SimulationConfig {
    std::int64_t n = 54;             ///< subjects per test-retest study
    std::int64_t m = 2;              ///< replicates per subject
    double w_sd = 1.0;               ///< true within-subject SD
    Probability p_sp{0.95};          ///< target specificity of the RC
    double delta = 0.0;              ///< true change in units of w_sd (sensitivity arm)
    std::int64_t replicates = 100'000;
    std::uint64_t seed = 0;
    std::int64_t pairs_per_study = 1;  ///< longitudinal pairs classified per simulated study

    /// Throws DomainError on invalid fields.
    void validate() const;
    DegreesOfFreedom nu() const { return DegreesOfFreedom(n * (m - 1)); }
};

inline constexpr std::array<double, 7> kSummaryLevels{0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99};

struct DistributionSummary {
    double mean = 0.0;
    double sd = 0.0;
    std::array<double, 7> quantiles{};     ///< at kSummaryLevels
    std::array<double, 7> quantile_se{};   ///< MC standard errors of those quantiles
};

/// Samples plus their summary. Quantiles use linear interpolation between
/// order statistics (Hyndman-Fan type 7). Quantile standard errors come from
/// the binomial band of order statistics, (x_(j+) - x_(j-))/2 with
/// j+- = N p +- sqrt(N p (1 - p)), which needs no density estimate.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    const std::vector<double>& samples() const noexcept { return samples_; }
    const DistributionSummary& summary() const noexcept { return summary_; }
    double mc_standard_error_of_mean() const noexcept { return mean_se_; }

    double quantile(double p) const;
    double quantile_standard_error(double p) const;

private:
    std::vector<double> samples_;
    std::vector<double> sorted_;
    DistributionSummary summary_;
    double mean_se_ = 0.0;
};

/// `replicates` draws of w_hat / w_SD, each from a freshly simulated study of
/// n subjects x m replicates. Replicate r uses the stream (seed, r).
std::vector<double> simulate_wsd_ratios(const SimulationConfig& cfg);

/// P_esp realized per simulated study.
EmpiricalDistribution simulate_effective_specificity(const SimulationConfig& cfg);

/// P_ese (two-sided) realized per simulated study at cfg.delta.
EmpiricalDistribution simulate_effective_sensitivity(const SimulationConfig& cfg);

struct LongitudinalOutcome {
    double empirical_specificity = 0.0;
    double empirical_sensitivity = 0.0;
    /// Standard errors of the two rates, from the spread of per-study rates.
    double specificity_se = 0.0;
    double sensitivity_se = 0.0;
    std::int64_t studies = 0;
    std::int64_t pairs_per_study = 0;
};

/// End to end: simulate a study, form the estimated RC, then draw
/// longitudinal pairs with no change (specificity arm) and with a change of
/// delta * w_sd (sensitivity arm) and classify them with decide_change.
LongitudinalOutcome simulate_longitudinal_decisions(const SimulationConfig& cfg);

/// Kolmogorov-Smirnov distance sup |F_n - F|.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

/// |analytic - simulated| <= k * se
inline bool within_mc_band(double analytic, double simulated, double se, double k = 3.0) {
    return std::abs(analytic - simulated) <= k * se;
}

}  // namespace repeatkit::mc
