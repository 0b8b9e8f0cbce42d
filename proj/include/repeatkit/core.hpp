#pragma once

// Test-retest measurement model: Y_ij = mu_i + eps_ij, eps_ij ~ N(0, w_SD^2).

#include <string>
#include <vector>

#include "repeatkit/types.hpp"

namespace repeatkit {

struct SubjectMeasurements {
    std::string subject_id;
    std::vector<double> measurements;
};

/// Replicate measurements per subject. Every subject needs >= 2 finite values.
class TestRetestData {
public:
    explicit TestRetestData(std::vector<SubjectMeasurements> subjects);

    const std::vector<SubjectMeasurements>& subjects() const noexcept { return subjects_; }
    std::size_t subject_count() const noexcept { return subjects_.size(); }
    /// True when every subject has the same number of replicates.
    bool balanced() const noexcept;

private:
    std::vector<SubjectMeasurements> subjects_;
};

struct WsdEstimate {
    double wsd_hat = 0.0;
    DegreesOfFreedom nu{1};
    std::vector<std::string> warnings;
};

/// Below this many degrees of freedom the asymptotic formulas are unreliable.
inline constexpr std::int64_t kLowDegreesOfFreedom = 10;

/// Pooled within-subject SD: sqrt( sum_i sum_j (Y_ij - Ybar_i)^2 / sum_i (m_i - 1) ).
/// Coincides with the mean of per-subject variances when all m_i are equal.
WsdEstimate estimate_wsd(const TestRetestData& data);

struct RepeatabilityCoefficient {
    double value = 0.0;
    Probability target_specificity{0.95};
    bool estimated = false;
};

/// RC(p_sp) = Phi^{-1}(1 - (1 - p_sp)/2) * sqrt(2) * wsd.
RepeatabilityCoefficient repeatability_coefficient(double wsd, Probability p_sp, bool estimated = false);

struct LongitudinalPair {
    double y_pre;
    double y_post;
};

/// Change is declared iff |y_post - y_pre| > RC. The closed band [-RC, RC] is "no change".
bool decide_change(const LongitudinalPair& pair, const RepeatabilityCoefficient& rc);

}  // namespace repeatkit
