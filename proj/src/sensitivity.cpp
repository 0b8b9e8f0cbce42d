#include "repeatkit/sensitivity.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace repeatkit {

using numerics::normal_cdf;
using numerics::normal_quantile;
using numerics::two_sided_critical_value;

namespace {

double shift(EffectSize delta) { return delta.magnitude() / std::numbers::sqrt2; }

// P(D > z w) + P(D < -z w) for D ~ N(d, 1), d the standardized shift.
double two_sided_exceedance(double zw, double d) { return normal_cdf(d - zw) + normal_cdf(-zw - d); }

double one_sided_exceedance(double zw, double d) { return normal_cdf(d - zw); }

void require_feasible(EffectSize delta, Probability p_sp, Probability p_ese_lb, Approximation approximation) {
    const double z = two_sided_critical_value(p_sp);
    const double d = shift(delta);
    const double p_se = approximation == Approximation::FullTwoSided ? two_sided_exceedance(z, d)
                                                                     : one_sided_exceedance(z, d);
    if (!(p_se > p_ese_lb.value())) {
        throw InfeasibleError(fmt::format(
            "sensitivity lower bound {:.6g} is not below the sensitivity with known w_SD, p_se(delta={:.6g}) = {:.6g} "
            "({}); no sample size can reach it",
            p_ese_lb.value(), delta.signed_value(), p_se, to_string(approximation)));
    }
}

void require_nonzero_effect(EffectSize delta) {
    if (delta.magnitude() == 0.0) {
        throw DomainError("the one-sided exceedance forms need a nonzero effect size");
    }
}

}  // namespace

EffectSize::EffectSize(double delta) : magnitude_(std::fabs(delta)), negative_(std::signbit(delta)) {
    if (!std::isfinite(delta)) throw DomainError("effect size must be finite");
    if (delta == 0.0) negative_ = false;
}

EffectSize EffectSize::from_change(double mu_delta, double w_sd) {
    if (!(w_sd > 0.0) || !std::isfinite(w_sd)) throw DomainError("w_sd must be finite and > 0");
    return EffectSize(mu_delta / w_sd);
}

double sensitivity(EffectSize delta, Probability p_sp) {
    return two_sided_exceedance(two_sided_critical_value(p_sp), shift(delta));
}

double effective_sensitivity_given_ratio(double w, EffectSize delta, Probability p_sp, Approximation approximation) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("SD ratio must be finite and > 0");
    const double zw = two_sided_critical_value(p_sp) * w;
    return approximation == Approximation::FullTwoSided ? two_sided_exceedance(zw, shift(delta))
                                                        : one_sided_exceedance(zw, shift(delta));
}

double expected_effective_sensitivity(DegreesOfFreedom nu, EffectSize delta, Probability p_sp, MethodChoice method,
                                      const numerics::QuadratureSpec& spec) {
    const double z = two_sided_critical_value(p_sp);
    const double d = shift(delta);
    return numerics::ratio_expectation([z, d](double w) { return two_sided_exceedance(z * w, d); }, nu, method,
                                       spec);
}

double invert_two_sided_effective_sensitivity(double target, EffectSize delta, Probability p_sp) {
    if (!(target > 0.0 && target < 1.0)) throw DomainError("target sensitivity must lie in (0, 1)");
    const double z = two_sided_critical_value(p_sp);
    const double d = shift(delta);
    const auto p_ese = [&](double w) { return two_sided_exceedance(z * w, d); };
    // p_ese(0) = 1 > target; push hi out until p_ese(hi) <= target.
    double lo = 0.0;
    double hi = 1.0;
    while (p_ese(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw DomainError("cannot bracket the effective-sensitivity inversion");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (p_ese(mid) > target) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double sensitivity_confidence(DegreesOfFreedom nu, EffectSize delta, Probability p_sp, Probability p_ese_lb,
                              MethodChoice method, Approximation approximation) {
    require_feasible(delta, p_sp, p_ese_lb, approximation);
    if (approximation == Approximation::FullTwoSided) {
        const double w = invert_two_sided_effective_sensitivity(p_ese_lb.value(), delta, p_sp);
        return numerics::ratio_cdf(w, nu, method);
    }
    require_nonzero_effect(delta);
    // P_ese >= lb  <=>  W <= r
    const double r = (normal_quantile(p_ese_lb.complement()) + shift(delta)) / two_sided_critical_value(p_sp);
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) return r > 0.0 ? numerics::chisq_cdf(k * r * r, nu) : 0.0;
    return normal_cdf((r - 1.0) * std::sqrt(2.0 * k));
}

double sensitivity_lower_bound(DegreesOfFreedom nu, EffectSize delta, Probability p_sp, Probability p_conf,
                               MethodChoice method, Approximation approximation) {
    const double w = numerics::ratio_quantile(p_conf.value(), nu, method);
    const double z = two_sided_critical_value(p_sp);
    if (approximation == Approximation::FullTwoSided) {
        return two_sided_exceedance(z * std::max(w, 0.0), shift(delta));
    }
    require_nonzero_effect(delta);
    return one_sided_exceedance(z * w, shift(delta));
}

SampleSizeResult sample_size_sensitivity(std::int64_t m, EffectSize delta, Probability p_sp, Probability p_ese_lb,
                                         Probability p_conf, MethodChoice method, Approximation approximation) {
    if (m < 2) throw DomainError("number of replicates m must be >= 2");
    require_feasible(delta, p_sp, p_ese_lb, approximation);

    SampleSizeResult result;
    if (p_conf.value() <= 0.5) {
        result.warnings.push_back(
            "confidence <= 0.5: the criterion degenerates (the required bound holds at the median or below)");
    }
    const double z = two_sided_critical_value(p_sp);
    const double d = shift(delta);
    std::int64_t hint = 1;
    numerics::IntegerPredicate meets;
    if (approximation == Approximation::OneSidedExceedance) {
        require_nonzero_effect(delta);
        const double ratio = normal_quantile(p_conf.value()) * z / (normal_quantile(p_ese_lb.complement()) + d - z);
        const double raw = ratio * ratio / (2.0 * static_cast<double>(m - 1));
        hint = static_cast<std::int64_t>(std::min(std::max(1.0, std::ceil(raw)), static_cast<double>(kMaxSampleSize)));
        if (method == MethodChoice::Asymptotic) {
            result.raw = raw;
            result.n = hint;
            return result;
        }
        meets = [=](std::int64_t n) {
            const DegreesOfFreedom nu(n * (m - 1));
            return sensitivity_confidence(nu, delta, p_sp, p_ese_lb, method, approximation) >= p_conf.value();
        };
    } else {
        const double w = invert_two_sided_effective_sensitivity(p_ese_lb.value(), delta, p_sp);
        // Normal-approximation guess: 1 + Phi^{-1}(conf)/sqrt(2 nu) = w.
        if (w > 1.0) {
            const double g = normal_quantile(p_conf.value()) / (w - 1.0);
            hint = static_cast<std::int64_t>(
                std::min(std::max(1.0, std::ceil(g * g / (2.0 * static_cast<double>(m - 1)))),
                         static_cast<double>(kMaxSampleSize)));
        }
        meets = [=](std::int64_t n) {
            return numerics::ratio_cdf(w, DegreesOfFreedom(n * (m - 1)), method) >= p_conf.value();
        };
    }
    result.n = numerics::min_integer_satisfying(meets, hint, kMaxSampleSize);
    return result;
}

}  // namespace repeatkit
