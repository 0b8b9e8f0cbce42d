#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "repeatkit/cli/commands.hpp"
#include "repeatkit/cli/report.hpp"
#include "repeatkit/core.hpp"
#include "repeatkit/mc_oracle.hpp"
#include "repeatkit/sensitivity.hpp"
#include "repeatkit/specificity.hpp"

namespace py = pybind11;
using namespace repeatkit;

namespace {

MethodChoice method_from(const std::string& name) {
    if (name == "exact") return MethodChoice::Exact;
    if (name == "asymptotic") return MethodChoice::Asymptotic;
    throw DomainError("method must be 'exact' or 'asymptotic', got '" + name + "'");
}

Approximation approximation_from(const std::string& name) {
    if (name == "one-sided") return Approximation::OneSidedExceedance;
    if (name == "two-sided") return Approximation::FullTwoSided;
    throw DomainError("approximation must be 'one-sided' or 'two-sided', got '" + name + "'");
}

py::dict sample_size_dict(const SampleSizeResult& r) {
    py::dict d;
    d["n"] = r.n;
    d["raw"] = r.raw ? py::cast(*r.raw) : py::none();
    d["warnings"] = r.warnings;
    return d;
}

mc::SimulationConfig simulation(std::int64_t n, std::int64_t m, double p_sp, double delta, std::int64_t replicates,
                                std::uint64_t seed) {
    mc::SimulationConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.p_sp = Probability(p_sp);
    cfg.delta = delta;
    cfg.replicates = replicates;
    cfg.seed = seed;
    return cfg;
}

py::array_t<double> as_array(const std::vector<double>& values) {
    return py::array_t<double>(static_cast<py::ssize_t>(values.size()), values.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Design and retrospective assessment of test-retest repeatability studies";
    m.attr("__version__") = cli::tool_version();

    static py::exception<Error> base(m, "RepeatkitError", PyExc_ValueError);
    static py::exception<InfeasibleError> infeasible(m, "InfeasibleError", base.ptr());
    static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InfeasibleError& e) {
            py::set_error(infeasible, e.what());
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def(
        "estimate_wsd",
        [](const std::vector<std::vector<double>>& rows) {
            std::vector<SubjectMeasurements> subjects;
            for (std::size_t i = 0; i < rows.size(); ++i) subjects.push_back({std::to_string(i + 1), rows[i]});
            const auto est = estimate_wsd(TestRetestData(std::move(subjects)));
            py::dict d;
            d["wsd_hat"] = est.wsd_hat;
            d["nu"] = est.nu.value();
            d["warnings"] = est.warnings;
            return d;
        },
        py::arg("measurements"), "Pooled within-subject SD from per-subject replicate lists.");
    m.def(
        "repeatability_coefficient",
        [](double wsd, double p_sp) { return repeatability_coefficient(wsd, Probability(p_sp)).value; },
        py::arg("wsd"), py::arg("p_sp") = 0.95);

    m.def(
        "expected_effective_specificity",
        [](std::int64_t nu, double p_sp, const std::string& method) {
            return expected_effective_specificity(DegreesOfFreedom(nu), Probability(p_sp), method_from(method));
        },
        py::arg("nu"), py::arg("p_sp") = 0.95, py::arg("method") = "exact");
    m.def(
        "specificity_confidence",
        [](std::int64_t nu, double p_sp, double p_esp_lb, const std::string& method) {
            return specificity_confidence(DegreesOfFreedom(nu), Probability(p_sp), Probability(p_esp_lb),
                                          method_from(method));
        },
        py::arg("nu"), py::arg("p_sp"), py::arg("p_esp_lb"), py::arg("method") = "exact");
    m.def(
        "specificity_probability_below",
        [](std::int64_t nu, double p_sp, double bound, const std::string& method) {
            return specificity_probability_below(DegreesOfFreedom(nu), Probability(p_sp), Probability(bound),
                                                 method_from(method));
        },
        py::arg("nu"), py::arg("p_sp"), py::arg("bound"), py::arg("method") = "exact");
    m.def(
        "specificity_lower_bound",
        [](std::int64_t nu, double p_sp, double p_conf, const std::string& method) {
            return specificity_lower_bound(DegreesOfFreedom(nu), Probability(p_sp), Probability(p_conf),
                                           method_from(method));
        },
        py::arg("nu"), py::arg("p_sp") = 0.95, py::arg("p_conf") = 0.95, py::arg("method") = "exact");
    m.def(
        "sample_size_specificity",
        [](std::int64_t m_rep, double p_sp, double p_esp_lb, double p_conf, const std::string& method) {
            return sample_size_dict(sample_size_specificity(m_rep, Probability(p_sp), Probability(p_esp_lb),
                                                            Probability(p_conf), method_from(method)));
        },
        py::arg("m"), py::arg("p_sp"), py::arg("p_esp_lb"), py::arg("p_conf"), py::arg("method") = "exact");

    m.def(
        "sensitivity", [](double delta, double p_sp) { return sensitivity(EffectSize(delta), Probability(p_sp)); },
        py::arg("delta"), py::arg("p_sp") = 0.95);
    m.def(
        "expected_effective_sensitivity",
        [](std::int64_t nu, double delta, double p_sp, const std::string& method) {
            return expected_effective_sensitivity(DegreesOfFreedom(nu), EffectSize(delta), Probability(p_sp),
                                                  method_from(method));
        },
        py::arg("nu"), py::arg("delta"), py::arg("p_sp") = 0.95, py::arg("method") = "exact");
    m.def(
        "sensitivity_confidence",
        [](std::int64_t nu, double delta, double p_sp, double p_ese_lb, const std::string& method,
           const std::string& approximation) {
            return sensitivity_confidence(DegreesOfFreedom(nu), EffectSize(delta), Probability(p_sp),
                                          Probability(p_ese_lb), method_from(method),
                                          approximation_from(approximation));
        },
        py::arg("nu"), py::arg("delta"), py::arg("p_sp"), py::arg("p_ese_lb"), py::arg("method") = "exact",
        py::arg("approximation") = "one-sided");
    m.def(
        "sensitivity_lower_bound",
        [](std::int64_t nu, double delta, double p_sp, double p_conf, const std::string& method,
           const std::string& approximation) {
            return sensitivity_lower_bound(DegreesOfFreedom(nu), EffectSize(delta), Probability(p_sp),
                                           Probability(p_conf), method_from(method),
                                           approximation_from(approximation));
        },
        py::arg("nu"), py::arg("delta"), py::arg("p_sp") = 0.95, py::arg("p_conf") = 0.95,
        py::arg("method") = "exact", py::arg("approximation") = "one-sided");
    m.def(
        "sample_size_sensitivity",
        [](std::int64_t m_rep, double delta, double p_sp, double p_ese_lb, double p_conf, const std::string& method,
           const std::string& approximation) {
            return sample_size_dict(sample_size_sensitivity(m_rep, EffectSize(delta), Probability(p_sp),
                                                            Probability(p_ese_lb), Probability(p_conf),
                                                            method_from(method), approximation_from(approximation)));
        },
        py::arg("m"), py::arg("delta"), py::arg("p_sp"), py::arg("p_ese_lb"), py::arg("p_conf"),
        py::arg("method") = "exact", py::arg("approximation") = "one-sided");

    m.def(
        "simulate_effective_specificity",
        [](std::int64_t n, std::int64_t m_rep, double p_sp, std::int64_t replicates, std::uint64_t seed) {
            std::vector<double> samples;
            {
                py::gil_scoped_release release;
                samples = mc::simulate_effective_specificity(simulation(n, m_rep, p_sp, 0.0, replicates, seed)).samples();
            }
            return as_array(samples);
        },
        py::arg("n"), py::arg("m") = 2, py::arg("p_sp") = 0.95, py::arg("replicates") = 100000,
        py::arg("seed") = 0);
    m.def(
        "simulate_effective_sensitivity",
        [](std::int64_t n, double delta, std::int64_t m_rep, double p_sp, std::int64_t replicates,
           std::uint64_t seed) {
            std::vector<double> samples;
            {
                py::gil_scoped_release release;
                samples =
                    mc::simulate_effective_sensitivity(simulation(n, m_rep, p_sp, delta, replicates, seed)).samples();
            }
            return as_array(samples);
        },
        py::arg("n"), py::arg("delta"), py::arg("m") = 2, py::arg("p_sp") = 0.95, py::arg("replicates") = 100000,
        py::arg("seed") = 0);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run one command line; returns (exit_code, stdout, stderr).");
}
