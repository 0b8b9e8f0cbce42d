#pragma once

// Effective specificity P_esp: the no-change rate actually reached when the
// estimated RC replaces the true one. With W = w_hat / w_SD and
// z = Phi^{-1}(1 - (1 - p_sp)/2), P_esp = 1 - 2 (1 - Phi(z W)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repeatkit/numerics.hpp"
#include "repeatkit/types.hpp"

namespace repeatkit {

/// Realized effective specificity for a given SD ratio w = w_hat / w_SD > 0.
double effective_specificity_given_ratio(double w, Probability p_sp);

/// Density of P_esp on (0, 1) under the exact law of W.
double effective_specificity_pdf(double p, DegreesOfFreedom nu, Probability p_sp);

/// E[P_esp]. Bias is the result minus p_sp.
double expected_effective_specificity(DegreesOfFreedom nu, Probability p_sp, MethodChoice method,
                                      const numerics::QuadratureSpec& spec = {});

/// P[P_esp >= p_esp_lb].
double specificity_confidence(DegreesOfFreedom nu, Probability p_sp, Probability p_esp_lb,
                              MethodChoice method);

/// P[P_esp < bound] = 1 - specificity_confidence, computed without cancellation.
double specificity_probability_below(DegreesOfFreedom nu, Probability p_sp, Probability bound,
                                     MethodChoice method);

/// The bound exceeded by P_esp with probability p_conf. Inverse of
/// specificity_confidence in its bound argument. The asymptotic form is
/// clamped at 0 when the normal approximation puts W below zero.
double specificity_lower_bound(DegreesOfFreedom nu, Probability p_sp, Probability p_conf,
                               MethodChoice method);

struct SampleSizeResult {
    std::int64_t n = 0;
    /// Unrounded closed-form value; present for the closed-form solvers only.
    std::optional<double> raw;
    std::vector<std::string> warnings;
};

/// Largest n the exact solvers will search.
inline constexpr std::int64_t kMaxSampleSize = 100'000'000;

/// Smallest n (with m replicates) such that P[P_esp >= p_esp_lb] >= p_conf.
/// Asymptotic: closed form, n = ceil(raw). Exact: integer search on the
/// chi-square confidence, seeded with the asymptotic value.
SampleSizeResult sample_size_specificity(std::int64_t m, Probability p_sp, Probability p_esp_lb,
                                         Probability p_conf, MethodChoice method);

}  // namespace repeatkit
