#include "repeatkit/cli/figures.hpp"

#include <array>
#include <stdexcept>

#include <fmt/format.h>

#include "repeatkit/numerics.hpp"
#include "repeatkit/sensitivity.hpp"
#include "repeatkit/specificity.hpp"

namespace repeatkit::cli {

namespace {

constexpr int kDensityPoints = 6001;
constexpr int kRatioPoints = 1201;

class CsvBuilder {
public:
    explicit CsvBuilder(std::string header) : text_(std::move(header) + '\n') {}

    template <class... Args>
    void row(const Args&... fields) {
        bool first = true;
        ((text_ += (first ? "" : ","), text_ += field(fields), first = false), ...);
        text_ += '\n';
    }

    std::string take() { return std::move(text_); }

private:
    static std::string field(double v) { return fmt::format("{:.10g}", v); }
    static std::string field(std::int64_t v) { return std::to_string(v); }
    static std::string field(int v) { return std::to_string(v); }

    std::string text_;
};

DegreesOfFreedom paired(std::int64_t n) { return DegreesOfFreedom::from_design(n, 2); }

FigureData figure1(Probability p_sp) {
    FigureData data;
    CsvBuilder curve("n,m,nu,expected_exact,expected_asymptotic,bias_exact");
    for (std::int64_t n = 2; n <= 100; ++n) {
        const auto nu = paired(n);
        const double exact = expected_effective_specificity(nu, p_sp, MethodChoice::Exact);
        curve.row(n, 2, nu.value(), exact, expected_effective_specificity(nu, p_sp, MethodChoice::Asymptotic),
                  exact - p_sp.value());
    }
    data.files.push_back({"figure1a.csv", curve.take()});

    CsvBuilder density("n,w,p_esp,density");
    for (std::int64_t n : {10, 30, 60}) {
        const auto nu = paired(n);
        const auto support = numerics::ratio_support(nu, MethodChoice::Exact);
        const double step = (support.upper - support.lower) / (kDensityPoints - 1);
        for (int i = 0; i < kDensityPoints; ++i) {
            const double w = support.lower + step * i;
            if (!(w > 0.0)) continue;
            const double p = effective_specificity_given_ratio(w, p_sp);
            if (!(p > 0.0 && p < 1.0 - 1e-10)) continue;
            density.row(n, w, p, effective_specificity_pdf(p, nu, p_sp));
        }
        const double e = expected_effective_specificity(nu, p_sp, MethodChoice::Exact);
        data.markers.push_back({fmt::format("expected_effective_specificity[n={}]", n), e, "probability",
                                ResultLabel::Exact});
    }
    data.files.push_back({"figure1b.csv", density.take()});
    return data;
}

FigureData figure2(Probability p_sp) {
    FigureData data;
    CsvBuilder curve("delta,p_sp,sensitivity");
    for (int i = 0; i <= 800; ++i) {
        const double delta = i / 100.0;
        curve.row(delta, p_sp.value(), sensitivity(EffectSize(delta), p_sp));
    }
    data.files.push_back({"figure2.csv", curve.take()});
    data.markers.push_back(
        {"sensitivity[delta=4]", sensitivity(EffectSize(4.0), p_sp), "probability", ResultLabel::KnownWsd});
    return data;
}

FigureData figure3a(Probability p_sp) {
    FigureData data;
    const Probability conf(0.95);
    CsvBuilder surface("n,m,nu,lower_bound_exact,lower_bound_asymptotic");
    for (std::int64_t m = 2; m <= 5; ++m) {
        for (std::int64_t n = 2; n <= 200; ++n) {
            const auto nu = DegreesOfFreedom::from_design(n, m);
            surface.row(n, m, nu.value(), specificity_lower_bound(nu, p_sp, conf, MethodChoice::Exact),
                        specificity_lower_bound(nu, p_sp, conf, MethodChoice::Asymptotic));
        }
    }
    data.files.push_back({"figure3a.csv", surface.take()});
    for (std::int64_t n : {10, 20}) {
        data.markers.push_back({fmt::format("specificity_lower_bound[n={},m=2]", n),
                                specificity_lower_bound(paired(n), p_sp, conf, MethodChoice::Exact), "probability",
                                ResultLabel::Exact});
    }
    return data;
}

// Densities of the relative error W - 1 with the effective specificity and
// sensitivity overlaid. `shaded` marks the central 95% side of the normal law
// that favours the plotted criterion.
FigureData figure4(std::int64_t n, bool sensitivity_panel, Probability p_sp) {
    FigureData data;
    const auto nu = paired(n);
    const EffectSize delta(4.0);
    const Probability conf(0.95);
    const double lower = numerics::ratio_quantile(conf.complement(), nu, MethodChoice::Asymptotic);
    const double upper = numerics::ratio_quantile(conf.value(), nu, MethodChoice::Asymptotic);
    const auto support = numerics::ratio_support(nu, MethodChoice::Asymptotic);
    const double step = (support.upper - support.lower) / (kRatioPoints - 1);
    CsvBuilder curve("relative_error,pdf_asymptotic,pdf_exact,effective_specificity,effective_sensitivity,shaded");
    for (int i = 0; i < kRatioPoints; ++i) {
        const double w = support.lower + step * i;
        if (!(w > 0.0)) continue;
        const int shaded = sensitivity_panel ? (w <= upper) : (w >= lower);
        curve.row(w - 1.0, numerics::ratio_density(w, nu, MethodChoice::Asymptotic),
                  numerics::ratio_density(w, nu, MethodChoice::Exact), effective_specificity_given_ratio(w, p_sp),
                  effective_sensitivity_given_ratio(w, delta, p_sp), shaded);
    }
    data.files.push_back({sensitivity_panel ? "figure4b.csv" : "figure4a.csv", curve.take()});
    data.markers.push_back({"n", n, "subjects", ResultLabel::Exact});
    if (sensitivity_panel) {
        data.markers.push_back({"shaded_upper_relative_error", upper - 1.0, "ratio", ResultLabel::Asymptotic});
        data.markers.push_back({"effective_sensitivity_at_boundary", effective_sensitivity_given_ratio(upper, delta, p_sp),
                                "probability", ResultLabel::Asymptotic});
    } else {
        data.markers.push_back({"shaded_lower_relative_error", lower - 1.0, "ratio", ResultLabel::Asymptotic});
    }
    data.markers.push_back({"specificity_lower_bound_exact",
                            specificity_lower_bound(nu, p_sp, conf, MethodChoice::Exact), "probability",
                            ResultLabel::Exact});
    data.markers.push_back({"specificity_lower_bound_asymptotic",
                            specificity_lower_bound(nu, p_sp, conf, MethodChoice::Asymptotic), "probability",
                            ResultLabel::Asymptotic});
    return data;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"1", "2", "3a", "4a", "4b"};
    return ids;
}

FigureData figure_data(std::string_view id, double p_sp) {
    const Probability psp(p_sp);
    if (id == "1") return figure1(psp);
    if (id == "2") return figure2(psp);
    if (id == "3a") return figure3a(psp);
    if (id == "4a") return figure4(53, false, psp);
    if (id == "4b") return figure4(139, true, psp);
    throw std::invalid_argument(fmt::format("unknown figure id '{}' (expected one of 1, 2, 3a, 4a, 4b)", id));
}

}  // namespace repeatkit::cli
