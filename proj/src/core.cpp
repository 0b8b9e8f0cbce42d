#include "repeatkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "repeatkit/numerics.hpp"

namespace repeatkit {

TestRetestData::TestRetestData(std::vector<SubjectMeasurements> subjects) : subjects_(std::move(subjects)) {
    if (subjects_.empty()) throw ValidationError("test-retest data contains no subjects");
    for (const auto& s : subjects_) {
        if (s.measurements.size() < 2) {
            throw ValidationError("subject '" + s.subject_id + "' has " + std::to_string(s.measurements.size()) +
                                  " measurement(s); at least 2 replicates are required");
        }
        for (double y : s.measurements) {
            if (!std::isfinite(y)) {
                throw ValidationError("subject '" + s.subject_id + "' has a non-finite measurement");
            }
        }
    }
}

bool TestRetestData::balanced() const noexcept {
    const auto m = subjects_.front().measurements.size();
    return std::all_of(subjects_.begin(), subjects_.end(),
                       [m](const SubjectMeasurements& s) { return s.measurements.size() == m; });
}

WsdEstimate estimate_wsd(const TestRetestData& data) {
    double sum_squares = 0.0;
    std::int64_t nu = 0;
    for (const auto& s : data.subjects()) {
        const auto& y = s.measurements;
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
        for (double v : y) sum_squares += (v - mean) * (v - mean);
        nu += static_cast<std::int64_t>(y.size()) - 1;
    }
    WsdEstimate est;
    est.nu = DegreesOfFreedom(nu);
    est.wsd_hat = std::sqrt(sum_squares / static_cast<double>(nu));
    if (nu < kLowDegreesOfFreedom) {
        est.warnings.push_back("only " + std::to_string(nu) +
                               " degrees of freedom; asymptotic approximations are unreliable below " +
                               std::to_string(kLowDegreesOfFreedom));
    }
    if (est.wsd_hat == 0.0) {
        est.warnings.push_back("estimated within-subject SD is zero; every subject's replicates are identical");
    }
    return est;
}

RepeatabilityCoefficient repeatability_coefficient(double wsd, Probability p_sp, bool estimated) {
    if (!(wsd >= 0.0) || !std::isfinite(wsd)) throw DomainError("within-subject SD must be finite and >= 0");
    return {numerics::two_sided_critical_value(p_sp) * std::numbers::sqrt2 * wsd, p_sp, estimated};
}

bool decide_change(const LongitudinalPair& pair, const RepeatabilityCoefficient& rc) {
    return std::fabs(pair.y_post - pair.y_pre) > rc.value;
}

}  // namespace repeatkit
