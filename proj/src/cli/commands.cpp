#include "repeatkit/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "repeatkit/cli/figures.hpp"
#include "repeatkit/cli/measurements.hpp"
#include "repeatkit/cli/report.hpp"
#include "repeatkit/cli/tables.hpp"
#include "repeatkit/core.hpp"
#include "repeatkit/mc_oracle.hpp"
#include "repeatkit/sensitivity.hpp"
#include "repeatkit/specificity.hpp"

namespace repeatkit::cli {

namespace {

/// Inconsistent flags that the parser cannot express.
class UsageError : public Error {
public:
    using Error::Error;
};

/// The report or an output file could not be written.
class OutputError : public Error {
public:
    using Error::Error;
};

constexpr ResultLabel kExact = ResultLabel::Exact;
constexpr ResultLabel kAsymptotic = ResultLabel::Asymptotic;
constexpr ResultLabel kMonteCarlo = ResultLabel::MonteCarlo;

const char* const kProbability = "probability";

std::string short_number(double v) { return fmt::format("{:g}", v); }

ReportEnvelope envelope(std::string command) {
    ReportEnvelope report;
    report.command = std::move(command);
    report.tool_version = tool_version();
    return report;
}

void add_format_option(CLI::App* sub, std::string& format) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
}

std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw OutputError(fmt::format("cannot create output directory '{}'", dir));
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary);
    file << contents;
    file.close();
    if (!file) throw OutputError(fmt::format("cannot write '{}'", path.string()));
}

// ---------------------------------------------------------------------------

struct SpecOptions {
    std::int64_t m = 2;
    double psp = 0.95;
    double esp_lb = 0.0;
    double conf = 0.95;
};

ReportEnvelope samplesize_spec(const SpecOptions& o) {
    auto report = envelope("samplesize-spec");
    report.inputs = {{"m", o.m}, {"psp", o.psp}, {"esp_lb", o.esp_lb}, {"conf", o.conf}};
    const Probability psp(o.psp), lb(o.esp_lb), conf(o.conf);
    const auto asym = sample_size_specificity(o.m, psp, lb, conf, MethodChoice::Asymptotic);
    const auto exact = sample_size_specificity(o.m, psp, lb, conf, MethodChoice::Exact);
    report.add_method("exact");
    report.add_method("asymptotic");
    report.add("n_exact", exact.n, "subjects", kExact);
    report.add("n_asymptotic_raw", *asym.raw, "subjects", kAsymptotic);
    report.add("n_asymptotic", asym.n, "subjects", kAsymptotic);
    const auto nu = DegreesOfFreedom::from_design(exact.n, o.m);
    report.add("nu_exact", nu.value(), "degrees_of_freedom", kExact);
    report.add("confidence_at_n_exact", specificity_confidence(nu, psp, lb, MethodChoice::Exact), kProbability, kExact);
    report.add("expected_effective_specificity_exact",
               expected_effective_specificity(nu, psp, MethodChoice::Exact), kProbability, kExact);
    report.add("expected_effective_specificity_asymptotic",
               expected_effective_specificity(nu, psp, MethodChoice::Asymptotic), kProbability, kAsymptotic);
    for (const auto* w : {&asym.warnings, &exact.warnings})
        for (const auto& text : *w)
            if (std::find(report.warnings.begin(), report.warnings.end(), text) == report.warnings.end())
                report.warnings.push_back(text);
    return report;
}

// ---------------------------------------------------------------------------

struct SensOptions {
    std::int64_t m = 2;
    double psp = 0.95;
    std::optional<double> delta;
    std::optional<double> mu_delta;
    std::optional<double> wsd;
    double ese_lb = 0.0;
    double conf = 0.95;
    std::string approximation = "one-sided";
};

ReportEnvelope samplesize_sens(const SensOptions& o) {
    auto report = envelope("samplesize-sens");
    report.inputs = {{"m", o.m}, {"psp", o.psp}};
    std::optional<EffectSize> effect;
    if (o.delta) {
        report.inputs["delta"] = *o.delta;
        effect = EffectSize(*o.delta);
    } else {
        if (!o.mu_delta || !o.wsd) throw UsageError("give either --delta or both --mu-delta and --wsd");
        report.inputs["mu_delta"] = *o.mu_delta;
        report.inputs["wsd"] = *o.wsd;
        effect = EffectSize::from_change(*o.mu_delta, *o.wsd);
    }
    report.inputs["ese_lb"] = o.ese_lb;
    report.inputs["conf"] = o.conf;
    report.inputs["approximation"] = o.approximation;

    const auto approximation =
        o.approximation == "two-sided" ? Approximation::FullTwoSided : Approximation::OneSidedExceedance;
    const Probability psp(o.psp), lb(o.ese_lb), conf(o.conf);
    report.add("delta", effect->signed_value(), "wsd_units", ResultLabel::KnownWsd);
    report.add("sensitivity_known_wsd", sensitivity(*effect, psp), kProbability, ResultLabel::KnownWsd);

    const auto exact = sample_size_sensitivity(o.m, *effect, psp, lb, conf, MethodChoice::Exact, approximation);
    report.add_method("exact");
    std::int64_t design_n = exact.n;
    if (approximation == Approximation::OneSidedExceedance) {
        const auto asym = sample_size_sensitivity(o.m, *effect, psp, lb, conf, MethodChoice::Asymptotic, approximation);
        report.add_method("asymptotic");
        report.add("n_asymptotic_raw", *asym.raw, "subjects", kAsymptotic);
        report.add("n_asymptotic", asym.n, "subjects", kAsymptotic);
        design_n = asym.n;
        report.warnings.insert(report.warnings.end(), asym.warnings.begin(), asym.warnings.end());
    }
    report.add("n_exact", exact.n, "subjects", kExact);
    for (const auto& text : exact.warnings)
        if (std::find(report.warnings.begin(), report.warnings.end(), text) == report.warnings.end())
            report.warnings.push_back(text);

    // Quality of the design at the closed-form n (one-sided) or the searched n (two-sided).
    const auto nu = DegreesOfFreedom::from_design(design_n, o.m);
    report.add("induced_at_n", design_n, "subjects", approximation == Approximation::OneSidedExceedance ? kAsymptotic : kExact);
    report.add("confidence_at_induced_n", sensitivity_confidence(nu, *effect, psp, lb, MethodChoice::Exact, approximation),
               kProbability, kExact);
    report.add("expected_effective_sensitivity_exact",
               expected_effective_sensitivity(nu, *effect, psp, MethodChoice::Exact), kProbability, kExact);
    report.add("induced_specificity_lb_exact", specificity_lower_bound(nu, psp, conf, MethodChoice::Exact),
               kProbability, kExact);
    report.add("induced_specificity_lb_asymptotic", specificity_lower_bound(nu, psp, conf, MethodChoice::Asymptotic),
               kProbability, kAsymptotic);
    return report;
}

// ---------------------------------------------------------------------------

struct RetroOptions {
    std::optional<std::int64_t> n;
    std::int64_t m = 2;
    std::optional<std::int64_t> nu;
    double psp = 0.95;
    double conf = 0.95;
    std::vector<double> bounds;
    std::vector<double> deltas;
};

ReportEnvelope retro(const RetroOptions& o, bool m_given) {
    auto report = envelope("retro");
    std::optional<DegreesOfFreedom> nu;
    if (o.nu) {
        if (o.n || m_given) throw UsageError("--nu excludes --n and --m");
        report.inputs["nu"] = *o.nu;
        nu = DegreesOfFreedom(*o.nu);
    } else {
        if (!o.n) throw UsageError("give --n (with optional --m) or --nu");
        report.inputs["n"] = *o.n;
        report.inputs["m"] = o.m;
        nu = DegreesOfFreedom::from_design(*o.n, o.m);
    }
    report.inputs["psp"] = o.psp;
    report.inputs["conf"] = o.conf;
    report.inputs["bound"] = o.bounds;
    report.inputs["delta"] = o.deltas;
    const Probability psp(o.psp), conf(o.conf);
    report.add_method("exact");
    report.add_method("asymptotic");
    report.add("nu", nu->value(), "degrees_of_freedom", kExact);
    if (nu->value() < kLowDegreesOfFreedom)
        report.warnings.push_back(fmt::format("nu = {} < {}: asymptotic values are unreliable", nu->value(),
                                              kLowDegreesOfFreedom));
    for (auto method : {MethodChoice::Exact, MethodChoice::Asymptotic}) {
        const auto label = method == MethodChoice::Exact ? kExact : kAsymptotic;
        const std::string suffix(to_string(method));
        const double e = expected_effective_specificity(*nu, psp, method);
        report.add("expected_effective_specificity_" + suffix, e, kProbability, label);
        report.add("bias_" + suffix, e - psp.value(), "probability_difference", label);
        report.add("specificity_lower_bound_" + suffix, specificity_lower_bound(*nu, psp, conf, method), kProbability,
                   label);
        for (double b : o.bounds) {
            report.add(fmt::format("probability_below[{}]_{}", short_number(b), suffix),
                       specificity_probability_below(*nu, psp, Probability(b), method), kProbability, label);
        }
    }
    for (double d : o.deltas) {
        const EffectSize delta(d);
        const std::string tag = short_number(d);
        report.add(fmt::format("sensitivity[delta={}]_known_wsd", tag), sensitivity(delta, psp), kProbability,
                   ResultLabel::KnownWsd);
        for (auto method : {MethodChoice::Exact, MethodChoice::Asymptotic}) {
            const auto label = method == MethodChoice::Exact ? kExact : kAsymptotic;
            const std::string suffix(to_string(method));
            report.add(fmt::format("expected_effective_sensitivity[delta={}]_{}", tag, suffix),
                       expected_effective_sensitivity(*nu, delta, psp, method), kProbability, label);
            if (delta.magnitude() > 0.0) {
                report.add(fmt::format("sensitivity_lower_bound[delta={}]_{}", tag, suffix),
                           sensitivity_lower_bound(*nu, delta, psp, conf, method), kProbability, label);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

struct EstimateOptions {
    std::string input;
    double psp = 0.95;
};

ReportEnvelope estimate(const EstimateOptions& o) {
    auto report = envelope("estimate");
    report.inputs = {{"input", o.input}, {"psp", o.psp}};
    const Probability psp(o.psp);
    std::vector<MeasurementRecord> records;
    if (o.input == "-") {
        records = read_measurements(std::cin);
    } else {
        std::ifstream file(o.input);
        if (!file) throw ValidationError(fmt::format("cannot open input file '{}'", o.input));
        records = read_measurements(file);
    }
    const auto data = to_test_retest_data(records);
    const auto est = estimate_wsd(data);
    report.add_method("exact");
    report.add("subjects", static_cast<std::int64_t>(data.subject_count()), "subjects", ResultLabel::Estimate);
    report.add("balanced", data.balanced(), "", ResultLabel::Estimate);
    report.add("nu", est.nu.value(), "degrees_of_freedom", ResultLabel::Estimate);
    report.add("wsd_hat", est.wsd_hat, "data_units", ResultLabel::Estimate);
    report.add("rc_hat", repeatability_coefficient(est.wsd_hat, psp, true).value, "data_units", ResultLabel::Estimate);
    for (double c : {0.8, 0.9, 0.95}) {
        report.add(fmt::format("specificity_lower_bound[conf={}]_exact", short_number(c)),
                   specificity_lower_bound(est.nu, psp, Probability(c), MethodChoice::Exact), kProbability, kExact);
    }
    report.warnings = est.warnings;
    return report;
}

// ---------------------------------------------------------------------------

struct TablesOptions {
    TableSpec spec;
    std::string out;
};

ReportEnvelope tables(const TablesOptions& o) {
    auto report = envelope("tables");
    report.inputs = {{"m_list", o.spec.m_list},
                     {"conf_list", o.spec.conf_list},
                     {"esp_lb_list", o.spec.esp_lb_list},
                     {"psp_list", o.spec.psp_list},
                     {"out", o.out}};
    for (auto m : o.spec.m_list)
        if (m < 2) throw DomainError("every m in --m-list must be >= 2");
    for (const auto* list : {&o.spec.conf_list, &o.spec.esp_lb_list, &o.spec.psp_list})
        for (double p : *list) static_cast<void>(Probability(p));
    const auto dir = prepare_output_dir(o.out);
    report.add_method("exact");
    std::int64_t populated = 0;
    for (auto m : o.spec.m_list) {
        const auto grid = compute_grid(m, o.spec);
        populated += static_cast<std::int64_t>(grid.populated());
        const auto stem = fmt::format("sample_sizes_m{}", m);
        write_file(dir / (stem + ".csv"), grid_csv(grid));
        write_file(dir / (stem + ".md"), grid_markdown(grid));
        report.add(fmt::format("csv[m={}]", m), (dir / (stem + ".csv")).string(), "path", kExact);
        report.add(fmt::format("markdown[m={}]", m), (dir / (stem + ".md")).string(), "path", kExact);
    }
    report.add("populated_cells", populated, "cells", kExact);
    return report;
}

// ---------------------------------------------------------------------------

struct FigureOptions {
    std::string figure;
    std::string out;
    double psp = 0.95;
};

ReportEnvelope figure(const FigureOptions& o) {
    auto report = envelope("figure-data");
    report.inputs = {{"figure", o.figure}, {"out", o.out}, {"psp", o.psp}};
    auto data = figure_data(o.figure, o.psp);
    const auto dir = prepare_output_dir(o.out);
    report.add_method("exact");
    report.add_method("asymptotic");
    for (const auto& file : data.files) {
        write_file(dir / file.filename, file.csv);
        report.add("file[" + file.filename + "]", (dir / file.filename).string(), "path", kExact);
    }
    for (auto& marker : data.markers) report.results.push_back(std::move(marker));
    return report;
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
    std::int64_t n = 54;
    std::int64_t m = 2;
    double psp = 0.95;
    double conf = 0.95;
    std::int64_t replicates = 100'000;
    std::uint64_t seed = 0;
    std::optional<double> delta;
    std::int64_t pairs_per_study = 1;
};

void add_distribution(ReportEnvelope& report, const std::string& prefix, const mc::EmpiricalDistribution& dist) {
    const auto& s = dist.summary();
    report.add(prefix + "_mean", s.mean, kProbability, kMonteCarlo);
    report.add(prefix + "_mean_se", dist.mc_standard_error_of_mean(), kProbability, kMonteCarlo);
    report.add(prefix + "_sd", s.sd, kProbability, kMonteCarlo);
    for (std::size_t i = 0; i < mc::kSummaryLevels.size(); ++i) {
        const auto level = short_number(mc::kSummaryLevels[i]);
        report.add(fmt::format("{}_quantile[{}]", prefix, level), s.quantiles[i], kProbability, kMonteCarlo);
        report.add(fmt::format("{}_quantile_se[{}]", prefix, level), s.quantile_se[i], kProbability, kMonteCarlo);
    }
}

void add_agreement(ReportEnvelope& report, const std::string& name, double analytic, double simulated, double se) {
    report.add(name + "_exact", analytic, kProbability, kExact);
    report.add(name + "_within_3se", mc::within_mc_band(analytic, simulated, se), "", kMonteCarlo);
}

ReportEnvelope simulate(const SimulateOptions& o) {
    auto report = envelope("simulate");
    report.inputs = {{"n", o.n},         {"m", o.m},       {"psp", o.psp},
                     {"conf", o.conf},   {"replicates", o.replicates},
                     {"seed", o.seed},   {"pairs_per_study", o.pairs_per_study}};
    if (o.delta) report.inputs["delta"] = *o.delta;
    mc::SimulationConfig cfg;
    cfg.n = o.n;
    cfg.m = o.m;
    cfg.p_sp = Probability(o.psp);
    cfg.replicates = o.replicates;
    cfg.seed = o.seed;
    cfg.delta = o.delta.value_or(0.0);
    cfg.pairs_per_study = o.pairs_per_study;
    cfg.validate();
    const Probability conf(o.conf);
    const auto nu = cfg.nu();
    const double tail = conf.complement();
    report.add_method("monte_carlo");
    report.add_method("exact");
    report.add("nu", nu.value(), "degrees_of_freedom", kExact);
    report.add("quantile_se_method", std::string("binomial order-statistic band"), "", kMonteCarlo);

    const auto spec = mc::simulate_effective_specificity(cfg);
    add_distribution(report, "p_esp", spec);
    add_agreement(report, "expected_effective_specificity",
                  expected_effective_specificity(nu, cfg.p_sp, MethodChoice::Exact), spec.summary().mean,
                  spec.mc_standard_error_of_mean());
    report.add("p_esp_quantile_at_lower_tail", spec.quantile(tail), kProbability, kMonteCarlo);
    add_agreement(report, "specificity_lower_bound", specificity_lower_bound(nu, cfg.p_sp, conf, MethodChoice::Exact),
                  spec.quantile(tail), spec.quantile_standard_error(tail));

    const auto longitudinal = mc::simulate_longitudinal_decisions(cfg);
    report.add("longitudinal_specificity", longitudinal.empirical_specificity, kProbability, kMonteCarlo);
    report.add("longitudinal_specificity_se", longitudinal.specificity_se, kProbability, kMonteCarlo);
    report.add("longitudinal_specificity_within_3se",
               mc::within_mc_band(expected_effective_specificity(nu, cfg.p_sp, MethodChoice::Exact),
                                  longitudinal.empirical_specificity, longitudinal.specificity_se),
               "", kMonteCarlo);

    if (o.delta) {
        const EffectSize delta(*o.delta);
        const auto sens = mc::simulate_effective_sensitivity(cfg);
        add_distribution(report, "p_ese", sens);
        const double expected = expected_effective_sensitivity(nu, delta, cfg.p_sp, MethodChoice::Exact);
        add_agreement(report, "expected_effective_sensitivity", expected, sens.summary().mean,
                      sens.mc_standard_error_of_mean());
        report.add("p_ese_quantile_at_lower_tail", sens.quantile(tail), kProbability, kMonteCarlo);
        add_agreement(report, "sensitivity_lower_bound",
                      sensitivity_lower_bound(nu, delta, cfg.p_sp, conf, MethodChoice::Exact,
                                              Approximation::FullTwoSided),
                      sens.quantile(tail), sens.quantile_standard_error(tail));
        report.add("longitudinal_sensitivity", longitudinal.empirical_sensitivity, kProbability, kMonteCarlo);
        report.add("longitudinal_sensitivity_se", longitudinal.sensitivity_se, kProbability, kMonteCarlo);
        report.add("longitudinal_sensitivity_within_3se",
                   mc::within_mc_band(expected, longitudinal.empirical_sensitivity, longitudinal.sensitivity_se), "",
                   kMonteCarlo);
    }
    return report;
}

// ---------------------------------------------------------------------------

int emit(const ReportEnvelope& report, const std::string& format, std::ostream& out) {
    render(out, report, output_format_from_string(format));
    out.flush();
    if (!out) throw OutputError("cannot write the report");
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plan and assess test-retest repeatability studies", "repeatkit"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::function<ReportEnvelope()> action;
    std::string format = "json";

    SpecOptions spec;
    auto* spec_cmd = app.add_subcommand("samplesize-spec", "Minimal n for an effective-specificity floor");
    spec_cmd->add_option("--m", spec.m, "Replicates per subject")->capture_default_str();
    spec_cmd->add_option("--psp", spec.psp, "Target specificity")->capture_default_str();
    spec_cmd->add_option("--esp-lb", spec.esp_lb, "Effective-specificity lower bound")->required();
    spec_cmd->add_option("--conf", spec.conf, "Confidence")->capture_default_str();
    add_format_option(spec_cmd, format);
    spec_cmd->callback([&] { action = [&] { return samplesize_spec(spec); }; });

    SensOptions sens;
    auto* sens_cmd = app.add_subcommand("samplesize-sens", "Minimal n for an effective-sensitivity floor");
    sens_cmd->add_option("--m", sens.m, "Replicates per subject")->capture_default_str();
    sens_cmd->add_option("--psp", sens.psp, "Target specificity")->capture_default_str();
    auto* delta_opt = sens_cmd->add_option("--delta", sens.delta, "Effect size in units of w_SD");
    auto* mu_opt = sens_cmd->add_option("--mu-delta", sens.mu_delta, "True change in biomarker units");
    auto* wsd_opt = sens_cmd->add_option("--wsd", sens.wsd, "Within-subject SD in biomarker units");
    delta_opt->excludes(mu_opt)->excludes(wsd_opt);
    mu_opt->needs(wsd_opt);
    wsd_opt->needs(mu_opt);
    sens_cmd->add_option("--ese-lb", sens.ese_lb, "Effective-sensitivity lower bound")->required();
    sens_cmd->add_option("--conf", sens.conf, "Confidence")->capture_default_str();
    sens_cmd->add_option("--approximation", sens.approximation, "Exceedance events counted")
        ->check(CLI::IsMember({"one-sided", "two-sided"}))
        ->capture_default_str();
    add_format_option(sens_cmd, format);
    sens_cmd->callback([&] { action = [&] { return samplesize_sens(sens); }; });

    RetroOptions ret;
    auto* retro_cmd = app.add_subcommand("retro", "Quality of an existing test-retest design");
    retro_cmd->add_option("--n", ret.n, "Subjects");
    auto* m_opt = retro_cmd->add_option("--m", ret.m, "Replicates per subject")->capture_default_str();
    retro_cmd->add_option("--nu", ret.nu, "Degrees of freedom (instead of --n/--m)");
    retro_cmd->add_option("--psp", ret.psp, "Target specificity")->capture_default_str();
    retro_cmd->add_option("--conf", ret.conf, "Confidence")->capture_default_str();
    retro_cmd->add_option("--bound", ret.bounds, "Report P[P_esp < bound]; repeatable")->delimiter(',');
    retro_cmd->add_option("--delta", ret.deltas, "Effect sizes for sensitivity summaries; repeatable")->delimiter(',');
    add_format_option(retro_cmd, format);
    retro_cmd->callback([&] { action = [&, m_given = m_opt->count() > 0] { return retro(ret, m_given); }; });

    EstimateOptions est;
    auto* est_cmd = app.add_subcommand("estimate", "Estimate w_SD and RC from a measurement CSV");
    est_cmd->add_option("input,--input", est.input, "CSV file (subject_id,replicate_index,value) or - for stdin")
        ->required();
    est_cmd->add_option("--psp", est.psp, "Target specificity")->capture_default_str();
    add_format_option(est_cmd, format);
    est_cmd->callback([&] { action = [&] { return estimate(est); }; });

    TablesOptions tab;
    auto* tab_cmd = app.add_subcommand("tables", "Write exact sample-size grids as CSV and markdown");
    tab_cmd->add_option("--m-list", tab.spec.m_list)->delimiter(',')->capture_default_str();
    tab_cmd->add_option("--conf-list", tab.spec.conf_list)->delimiter(',')->capture_default_str();
    tab_cmd->add_option("--esp-lb-list", tab.spec.esp_lb_list)->delimiter(',')->capture_default_str();
    tab_cmd->add_option("--psp-list", tab.spec.psp_list)->delimiter(',')->capture_default_str();
    tab_cmd->add_option("--out", tab.out, "Output directory")->required();
    add_format_option(tab_cmd, format);
    tab_cmd->callback([&] { action = [&] { return tables(tab); }; });

    FigureOptions fig;
    auto* fig_cmd = app.add_subcommand("figure-data", "Write plot-ready CSV point sets");
    fig_cmd->add_option("--figure", fig.figure, "Figure id")->required()->check(CLI::IsMember(figure_ids()));
    fig_cmd->add_option("--out", fig.out, "Output directory")->required();
    fig_cmd->add_option("--psp", fig.psp, "Target specificity")->capture_default_str();
    add_format_option(fig_cmd, format);
    fig_cmd->callback([&] { action = [&] { return figure(fig); }; });

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the analytic values");
    sim_cmd->add_option("--n", sim.n, "Subjects")->capture_default_str();
    sim_cmd->add_option("--m", sim.m, "Replicates per subject")->capture_default_str();
    sim_cmd->add_option("--psp", sim.psp, "Target specificity")->capture_default_str();
    sim_cmd->add_option("--conf", sim.conf, "Confidence for the lower-bound checks")->capture_default_str();
    sim_cmd->add_option("--replicates", sim.replicates, "Simulated studies")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--delta", sim.delta, "Effect size for the sensitivity arm");
    sim_cmd->add_option("--pairs-per-study", sim.pairs_per_study, "Longitudinal pairs per simulated study")
        ->capture_default_str();
    add_format_option(sim_cmd, format);
    sim_cmd->callback([&] { action = [&] { return simulate(sim); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return emit(action(), format, out);
    } catch (const InfeasibleError& e) {
        err << "infeasible design: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << '\n';
        return kExitOutput;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitSoftware;
    } catch (const Error& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace repeatkit::cli
