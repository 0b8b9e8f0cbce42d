#pragma once

// Special functions, adaptive quadrature and monotone integer search.
//
// Everything here is pure and reentrant: no hidden state, no globals touched
// (in particular std::lgamma is avoided because glibc writes `signgam`).

#include <cstdint>
#include <functional>

#include "repeatkit/types.hpp"

namespace repeatkit::numerics {

// ---------------------------------------------------------------------------
// Standard normal
// ---------------------------------------------------------------------------

/// Phi(x). Throws DomainError for non-finite x.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Phi^{-1}(p) for p in (0, 1): Acklam's rational approximation followed by a
/// single Halley step, giving close to full double precision.
double normal_quantile(double p);
inline double normal_quantile(Probability p) { return normal_quantile(p.value()); }

/// z such that P(|Z| <= z) = p, i.e. Phi^{-1}(1 - (1 - p)/2).
double two_sided_critical_value(Probability p);

// ---------------------------------------------------------------------------
// Gamma / chi-square
// ---------------------------------------------------------------------------

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double gamma_q(double a, double x);

double chisq_pdf(double x, DegreesOfFreedom nu);
double chisq_cdf(double x, DegreesOfFreedom nu);
/// Survival function 1 - F(x), without cancellation in the upper tail.
double chisq_sf(double x, DegreesOfFreedom nu);
/// F^{-1}(p). Wilson-Hilferty start, then bracketed Newton.
double chisq_quantile(double p, DegreesOfFreedom nu);
inline double chisq_quantile(Probability p, DegreesOfFreedom nu) {
    return chisq_quantile(p.value(), nu);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration over [lower, upper].
/// Throws ConvergenceError (carrying the best estimate and its error bound)
/// if the subdivision budget is exhausted.
QuadratureResult integrate_detailed(const Integrand& f, double lower, double upper,
                                    const QuadratureSpec& spec = {});

inline double integrate(const Integrand& f, double lower, double upper,
                        const QuadratureSpec& spec = {}) {
    return integrate_detailed(f, lower, upper, spec).value;
}

// ---------------------------------------------------------------------------
// Monotone integer search
// ---------------------------------------------------------------------------

using IntegerPredicate = std::function<bool(std::int64_t)>;

/// Least n in [1, max_n] with predicate(n) true, assuming predicate is false
/// below some threshold and true from it on. Brackets exponentially around
/// start_hint, then bisects. Throws InfeasibleError if predicate(max_n) is false.
std::int64_t min_integer_satisfying(const IntegerPredicate& predicate, std::int64_t start_hint,
                                    std::int64_t max_n);

// ---------------------------------------------------------------------------
// Law of the SD ratio W = w_hat / w_SD
// ---------------------------------------------------------------------------

/// Density of W: exact (nu W^2 ~ chi^2_nu) or asymptotic (W ~ N(1, 1/(2 nu))).
double ratio_density(double w, DegreesOfFreedom nu, MethodChoice method);

/// Truncated integration range carrying all but ~1e-14 of the mass of W.
struct Interval {
    double lower;
    double upper;
};
Interval ratio_support(DegreesOfFreedom nu, MethodChoice method);

/// E[h(W)] under the chosen law, by quadrature over ratio_support.
double ratio_expectation(const std::function<double(double)>& h, DegreesOfFreedom nu,
                         MethodChoice method, const QuadratureSpec& spec = {});

/// P(W <= w).
double ratio_cdf(double w, DegreesOfFreedom nu, MethodChoice method);
/// w with P(W <= w) = p.
double ratio_quantile(double p, DegreesOfFreedom nu, MethodChoice method);

}  // namespace repeatkit::numerics
