#pragma once

// Sensitivity for a true change of delta within-subject SDs, with the RC
// either known or estimated (effective sensitivity P_ese).

#include <cstdint>

#include "repeatkit/numerics.hpp"
#include "repeatkit/specificity.hpp"
#include "repeatkit/types.hpp"

namespace repeatkit {

/// Effect size delta = mu_delta / w_SD. Negative effects are stored as their
/// magnitude with a sign flag; every formula is symmetric in the sign.
class EffectSize {
public:
    explicit EffectSize(double delta);
    /// delta = mu_delta / w_sd, with mu_delta in biomarker units.
    static EffectSize from_change(double mu_delta, double w_sd);

    double magnitude() const noexcept { return magnitude_; }
    bool negative() const noexcept { return negative_; }
    /// The signed value as given.
    double signed_value() const noexcept { return negative_ ? -magnitude_ : magnitude_; }

private:
    double magnitude_;
    bool negative_;
};

/// Which exceedance events count toward P_ese.
/// OneSidedExceedance keeps only the event in the direction of the effect,
/// which is what the closed-form confidence and sample-size formulas use.
enum class Approximation { OneSidedExceedance, FullTwoSided };

inline std::string_view to_string(Approximation a) {
    return a == Approximation::OneSidedExceedance ? "one-sided" : "two-sided";
}

/// p_se(delta) with w_SD known.
double sensitivity(EffectSize delta, Probability p_sp);

/// Realized effective sensitivity at SD ratio w = w_hat / w_SD > 0.
double effective_sensitivity_given_ratio(double w, EffectSize delta, Probability p_sp,
                                         Approximation approximation = Approximation::FullTwoSided);

/// E[P_ese] (both exceedance terms). Bias is the result minus sensitivity(delta, p_sp).
double expected_effective_sensitivity(DegreesOfFreedom nu, EffectSize delta, Probability p_sp,
                                      MethodChoice method, const numerics::QuadratureSpec& spec = {});

/// P[P_ese >= p_ese_lb]. FullTwoSided inverts P_ese(w) = p_ese_lb numerically
/// and evaluates the law of W there. Throws InfeasibleError when the
/// sensitivity under the same approximation does not exceed p_ese_lb.
double sensitivity_confidence(DegreesOfFreedom nu, EffectSize delta, Probability p_sp, Probability p_ese_lb,
                              MethodChoice method,
                              Approximation approximation = Approximation::OneSidedExceedance);

/// The bound exceeded by P_ese with probability p_conf; inverse of
/// sensitivity_confidence in p_ese_lb.
double sensitivity_lower_bound(DegreesOfFreedom nu, EffectSize delta, Probability p_sp, Probability p_conf,
                               MethodChoice method,
                               Approximation approximation = Approximation::OneSidedExceedance);

/// Smallest n with P[P_ese >= p_ese_lb] >= p_conf.
///   OneSidedExceedance + Asymptotic: closed form, n = ceil(raw)
///   OneSidedExceedance + Exact:      integer search on the chi-square form
///   FullTwoSided:                    integer search on the inverted two-sided confidence
SampleSizeResult sample_size_sensitivity(std::int64_t m, EffectSize delta, Probability p_sp, Probability p_ese_lb,
                                         Probability p_conf, MethodChoice method,
                                         Approximation approximation = Approximation::OneSidedExceedance);

/// w > 0 with P_ese(w) = target under the two-sided rule (P_ese decreasing in w).
double invert_two_sided_effective_sensitivity(double target, EffectSize delta, Probability p_sp);

}  // namespace repeatkit
