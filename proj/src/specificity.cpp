#include "repeatkit/specificity.hpp"

#include <cmath>

namespace repeatkit {

using numerics::normal_cdf;
using numerics::normal_pdf;
using numerics::normal_quantile;
using numerics::two_sided_critical_value;

namespace {

// 2 Phi(-x): the two-sided exceedance of a N(0,1) beyond +-x.
double two_tail(double x) { return 2.0 * normal_cdf(-x); }

void check_m(std::int64_t m) {
    if (m < 2) throw DomainError("number of replicates m must be >= 2");
}

}  // namespace

double effective_specificity_given_ratio(double w, Probability p_sp) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("SD ratio must be finite and > 0");
    return 1.0 - two_tail(two_sided_critical_value(p_sp) * w);
}

double effective_specificity_pdf(double p, DegreesOfFreedom nu, Probability p_sp) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("effective_specificity_pdf: p must lie in (0, 1)");
    const double z = two_sided_critical_value(p_sp);
    // p = 2 Phi(z w) - 1  =>  w = Phi^{-1}((1 + p)/2) / z, dp/dw = 2 z phi(z w)
    const double zw = -normal_quantile(0.5 * (1.0 - p));
    const double jacobian = 2.0 * z * normal_pdf(zw);
    if (jacobian == 0.0) return 0.0;
    return numerics::ratio_density(zw / z, nu, MethodChoice::Exact) / jacobian;
}

double expected_effective_specificity(DegreesOfFreedom nu, Probability p_sp, MethodChoice method,
                                      const numerics::QuadratureSpec& spec) {
    const double z = two_sided_critical_value(p_sp);
    const double tail = numerics::ratio_expectation([z](double w) { return two_tail(z * w); }, nu, method, spec);
    return 1.0 - tail;
}

double specificity_confidence(DegreesOfFreedom nu, Probability p_sp, Probability p_esp_lb, MethodChoice method) {
    const double ratio = two_sided_critical_value(p_esp_lb) / two_sided_critical_value(p_sp);
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) return numerics::chisq_sf(k * ratio * ratio, nu);
    return normal_cdf(-(ratio - 1.0) * std::sqrt(2.0 * k));
}

double specificity_probability_below(DegreesOfFreedom nu, Probability p_sp, Probability bound, MethodChoice method) {
    const double ratio = two_sided_critical_value(bound) / two_sided_critical_value(p_sp);
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) return numerics::chisq_cdf(k * ratio * ratio, nu);
    return normal_cdf((ratio - 1.0) * std::sqrt(2.0 * k));
}

double specificity_lower_bound(DegreesOfFreedom nu, Probability p_sp, Probability p_conf, MethodChoice method) {
    const double w = numerics::ratio_quantile(p_conf.complement(), nu, method);
    if (!(w > 0.0)) return 0.0;
    return 1.0 - two_tail(two_sided_critical_value(p_sp) * w);
}

SampleSizeResult sample_size_specificity(std::int64_t m, Probability p_sp, Probability p_esp_lb,
                                         Probability p_conf, MethodChoice method) {
    check_m(m);
    if (p_esp_lb >= p_sp) {
        throw InfeasibleError(
            "no finite sample size achieves an effective-specificity floor at or above the target specificity");
    }
    const double z_sp = two_sided_critical_value(p_sp);
    const double z_lb = two_sided_critical_value(p_esp_lb);

    SampleSizeResult result;
    if (p_conf.value() <= 0.5) {
        result.warnings.push_back(
            "confidence <= 0.5: the criterion degenerates (the required bound holds at the median or below)");
    }
    const double ratio = normal_quantile(p_conf.complement()) * z_sp / (z_lb - z_sp);
    const double raw = ratio * ratio / (2.0 * static_cast<double>(m - 1));
    const auto closed_form_n = static_cast<std::int64_t>(std::max(1.0, std::ceil(raw)));

    if (method == MethodChoice::Asymptotic) {
        result.raw = raw;
        result.n = closed_form_n;
        return result;
    }
    const double c = (z_lb / z_sp) * (z_lb / z_sp);
    const auto meets = [&](std::int64_t n) {
        const DegreesOfFreedom nu(n * (m - 1));
        return numerics::chisq_sf(c * nu.as_double(), nu) >= p_conf.value();
    };
    result.n = numerics::min_integer_satisfying(meets, std::min(closed_form_n, kMaxSampleSize), kMaxSampleSize);
    return result;
}

}  // namespace repeatkit
