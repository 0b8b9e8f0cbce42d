#include "repeatkit/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "repeatkit/core.hpp"
#include "repeatkit/numerics.hpp"
#include "repeatkit/parallel.hpp"
#include "repeatkit/philox.hpp"
#include "repeatkit/sensitivity.hpp"
#include "repeatkit/specificity.hpp"

namespace repeatkit::mc {

namespace {

enum StreamTag : std::uint64_t { kStudyStream = 0, kLongitudinalStream = 1 };

// w_hat / w_sd of one simulated study; mu_i = 0 since subject means cancel.
double simulate_study_ratio(const SimulationConfig& cfg, std::uint64_t replicate) {
    rng::CounterStream stream(cfg.seed, replicate, kStudyStream);
    double sum_squares = 0.0;
    std::vector<double> y(static_cast<std::size_t>(cfg.m));
    for (std::int64_t i = 0; i < cfg.n; ++i) {
        double mean = 0.0;
        for (auto& v : y) {
            v = cfg.w_sd * stream.normal();
            mean += v;
        }
        mean /= static_cast<double>(cfg.m);
        for (double v : y) sum_squares += (v - mean) * (v - mean);
    }
    return std::sqrt(sum_squares / cfg.nu().as_double()) / cfg.w_sd;
}

template <class F>
std::vector<double> map_ratios(const std::vector<double>& ratios, F f) {
    std::vector<double> out(ratios.size());
    std::transform(ratios.begin(), ratios.end(), out.begin(), f);
    return out;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void SimulationConfig::validate() const {
    if (n < 1) throw DomainError("simulation: n must be >= 1");
    if (m < 2) throw DomainError("simulation: m must be >= 2");
    if (!(w_sd > 0.0) || !std::isfinite(w_sd)) throw DomainError("simulation: w_sd must be finite and > 0");
    if (!std::isfinite(delta)) throw DomainError("simulation: delta must be finite");
    if (replicates < 1) throw DomainError("simulation: replicates must be >= 1");
    if (pairs_per_study < 1) throw DomainError("simulation: pairs_per_study must be >= 1");
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DomainError("empirical distribution needs at least one sample");
    sorted_ = samples_;
    std::sort(sorted_.begin(), sorted_.end());
    summary_.mean = mean_of(samples_);
    summary_.sd = sd_of(samples_, summary_.mean);
    mean_se_ = summary_.sd / std::sqrt(static_cast<double>(samples_.size()));
    for (std::size_t i = 0; i < kSummaryLevels.size(); ++i) {
        summary_.quantiles[i] = quantile(kSummaryLevels[i]);
        summary_.quantile_se[i] = quantile_standard_error(kSummaryLevels[i]);
    }
}

double EmpiricalDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const double h = static_cast<double>(sorted_.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted_.size()) return sorted_.back();
    return sorted_[lo] + (h - static_cast<double>(lo)) * (sorted_[lo + 1] - sorted_[lo]);
}

double EmpiricalDistribution::quantile_standard_error(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    const double count = static_cast<double>(sorted_.size());
    const double spread = std::sqrt(count * p * (1.0 - p));
    const auto index = [&](double j) {
        return static_cast<std::size_t>(std::clamp(std::round(j), 0.0, count - 1.0));
    };
    return 0.5 * (sorted_[index(count * p + spread)] - sorted_[index(count * p - spread)]);
}

std::vector<double> simulate_wsd_ratios(const SimulationConfig& cfg) {
    cfg.validate();
    std::vector<double> ratios(static_cast<std::size_t>(cfg.replicates));
    parallel_for(ratios.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) ratios[r] = simulate_study_ratio(cfg, r);
    });
    return ratios;
}

EmpiricalDistribution simulate_effective_specificity(const SimulationConfig& cfg) {
    const auto ratios = simulate_wsd_ratios(cfg);
    return EmpiricalDistribution(
        map_ratios(ratios, [&](double w) { return effective_specificity_given_ratio(w, cfg.p_sp); }));
}

EmpiricalDistribution simulate_effective_sensitivity(const SimulationConfig& cfg) {
    const auto ratios = simulate_wsd_ratios(cfg);
    const EffectSize delta(cfg.delta);
    return EmpiricalDistribution(map_ratios(ratios, [&](double w) {
        return effective_sensitivity_given_ratio(w, delta, cfg.p_sp, Approximation::FullTwoSided);
    }));
}

LongitudinalOutcome simulate_longitudinal_decisions(const SimulationConfig& cfg) {
    cfg.validate();
    const auto studies = static_cast<std::size_t>(cfg.replicates);
    std::vector<double> spec_rate(studies);
    std::vector<double> sens_rate(studies);
    const double change = cfg.delta * cfg.w_sd;
    parallel_for(studies, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const double w_hat = simulate_study_ratio(cfg, r) * cfg.w_sd;
            const RepeatabilityCoefficient rc = repeatability_coefficient(w_hat, cfg.p_sp, true);
            rng::CounterStream stream(cfg.seed, r, kLongitudinalStream);
            std::int64_t kept = 0;
            std::int64_t detected = 0;
            for (std::int64_t k = 0; k < cfg.pairs_per_study; ++k) {
                const LongitudinalPair stable{cfg.w_sd * stream.normal(), cfg.w_sd * stream.normal()};
                const LongitudinalPair changed{cfg.w_sd * stream.normal(), change + cfg.w_sd * stream.normal()};
                if (!decide_change(stable, rc)) ++kept;
                if (decide_change(changed, rc)) ++detected;
            }
            const auto pairs = static_cast<double>(cfg.pairs_per_study);
            spec_rate[r] = static_cast<double>(kept) / pairs;
            sens_rate[r] = static_cast<double>(detected) / pairs;
        }
    });
    LongitudinalOutcome out;
    out.studies = cfg.replicates;
    out.pairs_per_study = cfg.pairs_per_study;
    out.empirical_specificity = mean_of(spec_rate);
    out.empirical_sensitivity = mean_of(sens_rate);
    const double root = std::sqrt(static_cast<double>(studies));
    out.specificity_se = sd_of(spec_rate, out.empirical_specificity) / root;
    out.sensitivity_se = sd_of(sens_rate, out.empirical_sensitivity) / root;
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw DomainError("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double count = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / count - f, f - static_cast<double>(i) / count});
    }
    return d;
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_distance_two_sample: no samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace repeatkit::mc
