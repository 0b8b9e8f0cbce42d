#include <array>
#include <cmath>
#include <numbers>

#include "repeatkit/numerics.hpp"

namespace repeatkit::numerics {

namespace {

// Acklam's coefficients, |relative error| < 1.15e-9 before refinement.
constexpr std::array<double, 6> kA{-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB{-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
constexpr std::array<double, 6> kC{-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD{7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowBreak = 0.02425;

// Cody's erfc rational approximations, scaled form exp(u^2) erfc(u).
constexpr std::array<double, 9> kErfcMidNum{
    5.64188496988670089e-1, 8.88314979438837594e0, 6.61191906371416295e1,
    2.98635138197400131e2,  8.81952221241769090e2, 1.71204761263407058e3,
    2.05107837782607147e3,  1.23033935479799725e3, 2.15311535474403846e-8};
constexpr std::array<double, 8> kErfcMidDen{
    1.57449261107098347e1, 1.17693950891312499e2, 5.37181101862009858e2,
    1.62138957456669019e3, 3.29079923573345963e3, 4.36261909014324716e3,
    3.43936767414372164e3, 1.23033935480374942e3};
constexpr std::array<double, 6> kErfcTailNum{
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kErfcTailDen{
    2.56852019228982242e0, 1.87295284992346047e0, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};
constexpr double kScaledBreak = 0.46875;

// exp(u^2) erfc(u) for u >= kScaledBreak.
double scaled_erfc(double u) {
    if (u <= 4.0) {
        double num = kErfcMidNum[8] * u;
        double den = u;
        for (int i = 0; i < 7; ++i) {
            num = (num + kErfcMidNum[i]) * u;
            den = (den + kErfcMidDen[i]) * u;
        }
        return (num + kErfcMidNum[7]) / (den + kErfcMidDen[7]);
    }
    const double r = 1.0 / (u * u);
    double num = kErfcTailNum[5] * r;
    double den = r;
    for (int i = 0; i < 4; ++i) {
        num = (num + kErfcTailNum[i]) * r;
        den = (den + kErfcTailDen[i]) * r;
    }
    const double tail = r * (num + kErfcTailNum[4]) / (den + kErfcTailDen[4]);
    return (std::numbers::inv_sqrtpi - tail) / u;
}

// exp(-t^2 / 2) with t split so the leading square is exact.
double gaussian_factor(double t) {
    const double head = std::trunc(t * 16.0) / 16.0;
    const double rest = (t - head) * (t + head);
    return std::exp(-0.5 * head * head) * std::exp(-0.5 * rest);
}

// Phi(-t) for t >= 0, full relative precision in the tail.
double upper_tail(double t) {
    const double u = t / std::numbers::sqrt2;
    if (u < kScaledBreak) return 0.5 * std::erfc(u);
    if (t > 38.5) return 0.0;
    return 0.5 * scaled_erfc(u) * gaussian_factor(t);
}

// Quantile for p <= 0.5 (lower half), where p carries full relative precision.
double lower_half_quantile(double p) {
    double x;
    if (p < kLowBreak) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
            ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
            (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
    }
    // Halley step.
    const double e = (x < 0.0 ? upper_tail(-x) : 1.0 - upper_tail(x)) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double normal_cdf(double x) {
    if (!std::isfinite(x)) throw DomainError("normal_cdf: argument must be finite");
    return x < 0.0 ? upper_tail(-x) : 1.0 - upper_tail(x);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    // 1 - p is exact for p > 0.5, so reflect into the lower half.
    return p < 0.5 ? lower_half_quantile(p) : -lower_half_quantile(1.0 - p);
}

double two_sided_critical_value(Probability p) {
    return -lower_half_quantile(0.5 * p.complement());
}

}  // namespace repeatkit::numerics
