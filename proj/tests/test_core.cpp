#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "repeatkit/core.hpp"
#include "repeatkit/numerics.hpp"

using namespace repeatkit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TestRetestData make(std::vector<std::vector<double>> rows) {
    std::vector<SubjectMeasurements> subjects;
    for (std::size_t i = 0; i < rows.size(); ++i) subjects.push_back({"s" + std::to_string(i + 1), rows[i]});
    return TestRetestData(std::move(subjects));
}

// Mean of per-subject unbiased variances, accumulated in long double from raw sums.
double brute_force_wsd(const std::vector<std::vector<double>>& rows) {
    long double total = 0;
    for (const auto& y : rows) {
        long double s = 0, s2 = 0;
        for (double v : y) {
            s += v;
            s2 += static_cast<long double>(v) * v;
        }
        const long double k = static_cast<long double>(y.size());
        total += (s2 - s * s / k) / (k - 1);
    }
    return static_cast<double>(std::sqrt(total / static_cast<long double>(rows.size())));
}

}  // namespace

TEST_CASE("TestRetestData validation", "[core]") {
    CHECK_THROWS_AS(TestRetestData({}), ValidationError);
    CHECK_THROWS_WITH(make({{1.0, 2.0}, {3.0}}), ContainsSubstring("s2"));
    CHECK_THROWS_AS(make({{1.0, std::nan("")}}), ValidationError);
    CHECK_THROWS_AS(make({{1.0, INFINITY}}), ValidationError);
    CHECK(make({{1.0, 2.0}, {3.0, 4.0}}).balanced());
    CHECK_FALSE(make({{1.0, 2.0}, {3.0, 4.0, 5.0}}).balanced());
}

TEST_CASE("estimate_wsd examples", "[core]") {
    const auto zero = estimate_wsd(make({{3.0, 3.0}}));
    CHECK(zero.wsd_hat == 0.0);
    CHECK(zero.nu.value() == 1);
    CHECK(zero.warnings.size() == 2);

    const auto pair = estimate_wsd(make({{1.0, 3.0}}));
    CHECK_THAT(pair.wsd_hat, WithinRel(std::sqrt(2.0), 1e-15));
    CHECK(pair.nu.value() == 1);

    const std::vector<std::vector<double>> rows{{0, 2}, {5, 5}, {10, 14}};
    const auto three = estimate_wsd(make(rows));
    CHECK_THAT(three.wsd_hat, WithinRel(brute_force_wsd(rows), 1e-14));
    CHECK_THAT(three.wsd_hat, WithinAbs(1.825741858, 1e-9));
    CHECK(three.nu.value() == 3);
}

TEST_CASE("estimate_wsd with unequal replicates pools sums of squares", "[core]") {
    const auto est = estimate_wsd(make({{1, 2}, {4, 6, 8}, {0, 0, 3}}));
    // SS = 0.5 + 8 + 6 over nu = 1 + 2 + 2
    CHECK(est.nu.value() == 5);
    CHECK_THAT(est.wsd_hat, WithinRel(std::sqrt(14.5 / 5.0), 1e-14));
}

TEST_CASE("estimate_wsd agrees with the brute-force mean of variances for equal m", "[core][property]") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> noise(0.0, 2.5);
    std::uniform_real_distribution<double> level(-50.0, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 17;
        const int m = 2 + trial % 4;
        std::vector<std::vector<double>> rows(n);
        for (auto& row : rows) {
            const double mu = level(gen);
            for (int j = 0; j < m; ++j) row.push_back(mu + noise(gen));
        }
        const auto est = estimate_wsd(make(rows));
        CHECK(est.nu.value() == n * (m - 1));
        CHECK_THAT(est.wsd_hat, WithinRel(brute_force_wsd(rows), 1e-11));
    }
}

TEST_CASE("estimate_wsd ignores per-subject offsets and scales linearly", "[core][property]") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> noise;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<double>> rows(8);
        for (auto& row : rows)
            for (int j = 0; j < 3; ++j) row.push_back(noise(gen));
        const double base = estimate_wsd(make(rows)).wsd_hat;

        auto shifted = rows;
        for (double& v : shifted[trial % 8]) v += 17.25;
        CHECK_THAT(estimate_wsd(make(shifted)).wsd_hat, WithinRel(base, 1e-12));

        const double c = 0.5 + trial;
        auto scaled = rows;
        for (auto& row : scaled)
            for (double& v : row) v *= c;
        CHECK_THAT(estimate_wsd(make(scaled)).wsd_hat, WithinRel(c * base, 1e-12));
    }
}

TEST_CASE("estimate_wsd warns below ten degrees of freedom", "[core]") {
    CHECK(estimate_wsd(make({{1, 2}, {2, 4}})).warnings.size() == 1);
    std::vector<std::vector<double>> rows(10, {1.0, 2.0});
    CHECK(estimate_wsd(make(rows)).warnings.empty());
}

TEST_CASE("nu w_hat^2 / w^2 follows the chi-square law", "[core][statistical]") {
    // Independent generator; only estimate_wsd and chisq_cdf from the library.
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> noise(0.0, 3.0);
    const int n = 5, m = 3, reps = 100000;
    const DegreesOfFreedom nu(n * (m - 1));
    std::vector<double> stats;
    stats.reserve(reps);
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (int r = 0; r < reps; ++r) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) rows[i][j] = 10.0 * i + noise(gen);
        const double w = estimate_wsd(make(rows)).wsd_hat / 3.0;
        stats.push_back(nu.as_double() * w * w);
    }
    std::sort(stats.begin(), stats.end());
    double ks = 0.0;
    for (int i = 0; i < reps; ++i) {
        const double f = numerics::chisq_cdf(stats[i], nu);
        ks = std::max({ks, std::fabs(f - double(i) / reps), std::fabs(f - double(i + 1) / reps)});
    }
    CHECK(ks < 0.01);
}

TEST_CASE("repeatability_coefficient", "[core]") {
    const Probability p(0.95);
    CHECK(repeatability_coefficient(0.0, p).value == 0.0);
    const auto one = repeatability_coefficient(1.0, p);
    CHECK_THAT(one.value, WithinAbs(1.959963984540054 * std::sqrt(2.0), 1e-12));
    CHECK_THAT(one.value, WithinAbs(2.771808, 1e-6));
    CHECK_FALSE(one.estimated);
    CHECK(repeatability_coefficient(2.0, p).value == 2.0 * one.value);
    CHECK(repeatability_coefficient(1.0, p, true).estimated);
    CHECK(repeatability_coefficient(1.0, p).target_specificity == p);
    CHECK_THROWS_AS(repeatability_coefficient(-1e-9, p), DomainError);
    CHECK_THROWS_AS(repeatability_coefficient(std::nan(""), p), DomainError);
}

TEST_CASE("repeatability_coefficient is linear in wsd", "[core][property]") {
    for (double psp : {0.8, 0.9, 0.95, 0.99}) {
        const double unit = repeatability_coefficient(1.0, Probability(psp)).value;
        for (double w = 0.125; w < 100.0; w *= 2.0)
            CHECK(repeatability_coefficient(w, Probability(psp)).value == w * unit);
    }
}

TEST_CASE("decide_change", "[core]") {
    const RepeatabilityCoefficient rc{2.77, Probability(0.95), false};
    CHECK_FALSE(decide_change({10.0, 10.0}, rc));
    CHECK(decide_change({10.0, 14.0}, rc));
    // 12.77 - 10.0 is inexact in binary; the 2.5 band below pins the closed-interval convention exactly.
    CHECK_FALSE(decide_change({10.0, 12.77}, rc));
    const RepeatabilityCoefficient exact{2.5, Probability(0.95), false};
    CHECK_FALSE(decide_change({10.0, 12.5}, exact));
    CHECK_FALSE(decide_change({12.5, 10.0}, exact));
    CHECK(decide_change({10.0, std::nextafter(12.5, 13.0)}, exact));
}

TEST_CASE("decide_change is symmetric in pre and post", "[core][property]") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const RepeatabilityCoefficient rc{std::fabs(u(gen)), Probability(0.95), true};
        const double a = u(gen), b = u(gen);
        CHECK(decide_change({a, b}, rc) == decide_change({b, a}, rc));
    }
}
