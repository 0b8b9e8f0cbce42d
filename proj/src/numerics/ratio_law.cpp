#include <cmath>
#include <numbers>

#include "repeatkit/numerics.hpp"

namespace repeatkit::numerics {

namespace {
constexpr double kTailMass = 1e-14;
constexpr double kNormalHalfWidthSd = 10.0;
}  // namespace

double ratio_density(double w, DegreesOfFreedom nu, MethodChoice method) {
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) {
        if (w <= 0.0) return 0.0;
        return chisq_pdf(k * w * w, nu) * 2.0 * w * k;
    }
    const double d = w - 1.0;
    return std::sqrt(k / std::numbers::pi) * std::exp(-k * d * d);
}

Interval ratio_support(DegreesOfFreedom nu, MethodChoice method) {
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) {
        return {std::sqrt(chisq_quantile(kTailMass, nu) / k),
                std::sqrt(chisq_quantile(1.0 - kTailMass, nu) / k)};
    }
    const double half = kNormalHalfWidthSd / std::sqrt(2.0 * k);
    return {1.0 - half, 1.0 + half};
}

double ratio_expectation(const std::function<double(double)>& h, DegreesOfFreedom nu,
                         MethodChoice method, const QuadratureSpec& spec) {
    const Interval support = ratio_support(nu, method);
    return integrate([&](double w) { return h(w) * ratio_density(w, nu, method); }, support.lower,
                     support.upper, spec);
}

double ratio_cdf(double w, DegreesOfFreedom nu, MethodChoice method) {
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) {
        if (w <= 0.0) return 0.0;
        return chisq_cdf(k * w * w, nu);
    }
    return normal_cdf((w - 1.0) * std::sqrt(2.0 * k));
}

double ratio_quantile(double p, DegreesOfFreedom nu, MethodChoice method) {
    const double k = nu.as_double();
    if (method == MethodChoice::Exact) return std::sqrt(chisq_quantile(p, nu) / k);
    return 1.0 + normal_quantile(p) / std::sqrt(2.0 * k);
}

}  // namespace repeatkit::numerics
