#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "repeatkit/errors.hpp"

namespace repeatkit {

/// A probability strictly inside (0, 1). Used for every input probability
/// (target specificity, confidence, lower bounds).
class Probability {
public:
    explicit Probability(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0)) {
            throw DomainError("probability must lie in the open interval (0, 1), got " +
                              std::to_string(value));
        }
    }

    double value() const noexcept { return value_; }
    /// 1 - p, exact for p >= 0.5.
    double complement() const noexcept { return 1.0 - value_; }

    friend bool operator==(Probability a, Probability b) noexcept { return a.value_ == b.value_; }
    friend auto operator<=>(Probability a, Probability b) noexcept { return a.value_ <=> b.value_; }

private:
    double value_;
};

/// Degrees of freedom of the within-subject variance estimator:
/// n(m-1) for a balanced design, sum(m_i - 1) otherwise.
class DegreesOfFreedom {
public:
    explicit DegreesOfFreedom(std::int64_t nu) : nu_(nu) {
        if (nu < 1) {
            throw DomainError("degrees of freedom must be >= 1, got " + std::to_string(nu));
        }
    }

    /// Balanced design of n subjects with m replicates each.
    static DegreesOfFreedom from_design(std::int64_t n, std::int64_t m) {
        if (n < 1) throw DomainError("number of subjects must be >= 1");
        if (m < 2) throw DomainError("number of replicates must be >= 2");
        return DegreesOfFreedom(n * (m - 1));
    }

    std::int64_t value() const noexcept { return nu_; }
    double as_double() const noexcept { return static_cast<double>(nu_); }

    friend bool operator==(DegreesOfFreedom, DegreesOfFreedom) = default;

private:
    std::int64_t nu_;
};

/// Exact (chi-square law of the variance estimator) or asymptotic
/// (normal approximation of the SD ratio) evaluation path.
enum class MethodChoice { Exact, Asymptotic };

inline std::string_view to_string(MethodChoice m) {
    return m == MethodChoice::Exact ? "exact" : "asymptotic";
}

}  // namespace repeatkit
