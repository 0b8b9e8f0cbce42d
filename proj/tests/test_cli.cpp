#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "repeatkit/cli/commands.hpp"
#include "repeatkit/cli/measurements.hpp"
#include "repeatkit/cli/report.hpp"
#include "repeatkit/cli/tables.hpp"
#include "repeatkit/numerics.hpp"
#include "repeatkit/specificity.hpp"

using namespace repeatkit;
using namespace repeatkit::cli;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;

    Json json() const { return Json::parse(out); }
    double number(const std::string& name) const { return json()["results"][name]["value"].get<double>(); }
    std::int64_t integer(const std::string& name) const {
        return json()["results"][name]["value"].get<std::int64_t>();
    }
    std::string label(const std::string& name) const { return json()["results"][name]["label"]; }
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("repeatkit_test_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

fs::path write_csv(const std::string& name, const std::string& text) {
    const auto path = fs::temp_directory_path() / ("repeatkit_test_cli_" + name + ".csv");
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::vector<std::map<std::string, std::string>> read_rows(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    std::stringstream hs(line);
    for (std::string field; std::getline(hs, field, ',');) header.push_back(field);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::map<std::string, std::string> row;
        std::size_t i = 0;
        for (std::string field; std::getline(ls, field, ',');) row[header.at(i++)] = field;
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* const kFixture = "subject_id,replicate_index,value\ns1,1,0\ns1,2,2\ns2,1,5\ns2,2,5\ns3,1,10\ns3,2,14\n";

}  // namespace

// ---------------------------------------------------------------------------
// Report envelope

TEST_CASE("report JSON round-trips through the envelope schema", "[cli][report]") {
    ReportEnvelope r;
    r.command = "demo";
    r.tool_version = tool_version();
    r.inputs = {{"m", 2}, {"psp", 0.95}, {"list", {0.9, 0.925}}};
    r.add_method("exact");
    r.add_method("exact");
    r.add("n", std::int64_t{54}, "subjects", ResultLabel::Exact);
    r.add("p", 0.94483101234567, "probability", ResultLabel::Asymptotic);
    r.add("flag", true, "", ResultLabel::MonteCarlo);
    r.add("path", std::string("a,b"), "path", ResultLabel::Estimate);
    r.add("p_se", 0.8074, "probability", ResultLabel::KnownWsd);
    r.warnings.push_back("careful");
    CHECK(r.methods.size() == 1);

    const Json first = to_json(r);
    const ReportEnvelope back = from_json(first);
    CHECK(to_json(back) == first);
    CHECK(back.results.size() == r.results.size());
    CHECK(std::get<std::int64_t>(back.find("n")->value) == 54);
    CHECK(std::get<double>(back.find("p")->value) == 0.9448310123);
    CHECK(back.find("p")->label == ResultLabel::Asymptotic);
    CHECK(std::get<bool>(back.find("flag")->value));
    CHECK(back.find("missing") == nullptr);
    CHECK_THROWS_AS(from_json(Json::parse(R"({"command":"x"})")), std::invalid_argument);
    CHECK_THROWS_AS(result_label_from_string("approximate"), std::invalid_argument);
}

TEST_CASE("numbers are written with 10 significant digits", "[cli][report]") {
    CHECK(round_significant(0.12345678912345) == 0.1234567891);
    CHECK(round_significant(52.33537530) == 52.3353753);
    CHECK(round_significant(0.0) == 0.0);
    CHECK(Json(round_significant(1.0 / 3.0)).dump() == "0.3333333333");
    CHECK(Json(round_significant(138.11358181)).dump() == "138.1135818");
}

TEST_CASE("csv and table renderings", "[cli][report]") {
    ReportEnvelope r;
    r.command = "demo";
    r.tool_version = "0";
    r.inputs = {{"psp", 0.95}};
    r.add("p", 0.9448, "probability", ResultLabel::Exact);
    r.add("name", std::string("x,y"), "", ResultLabel::Estimate);
    r.warnings.push_back("a \"quoted\" note");
    std::ostringstream csv, table;
    render(csv, r, OutputFormat::Csv);
    render(table, r, OutputFormat::Table);
    CHECK(csv.str() ==
          "kind,name,value,unit,label\ninput,psp,0.95,,\nresult,p,0.9448,probability,exact\n"
          "result,name,\"x,y\",,estimate\nwarning,,\"a \"\"quoted\"\" note\",,\n");
    CHECK_THAT(table.str(), ContainsSubstring("(94.48%)"));
    CHECK_THAT(table.str(), ContainsSubstring("a \"quoted\" note"));
    CHECK_THROWS_AS(output_format_from_string("xml"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Measurement CSV

TEST_CASE("measurement CSV parsing", "[cli][data]") {
    std::istringstream in("\xEF\xBB\xBFsubject_id,replicate_index,value\r\nb,2,4.5\r\na,1,1e1\nb,1,-3\n\na,2,+2\n");
    const auto records = read_measurements(in);
    REQUIRE(records.size() == 4);
    CHECK(records[1].value == 10.0);
    const auto data = to_test_retest_data(records);
    REQUIRE(data.subject_count() == 2);
    CHECK(data.subjects()[0].subject_id == "b");
    CHECK(data.subjects()[0].measurements == std::vector<double>{-3.0, 4.5});
    CHECK(data.subjects()[1].measurements == std::vector<double>{10.0, 2.0});
}

TEST_CASE("measurement CSV errors carry line numbers", "[cli][data]") {
    const auto fails_with = [](const std::string& text, const std::string& message) {
        std::istringstream in(text);
        CHECK_THROWS_WITH(to_test_retest_data(read_measurements(in)), ContainsSubstring(message));
    };
    fails_with("id,rep,value\n", "line 1");
    fails_with("subject_id,replicate_index,value\na,1,2\na,2,abc\n", "line 3");
    fails_with("subject_id,replicate_index,value\na,1,2\na,2,nan\n", "line 3");
    fails_with("subject_id,replicate_index,value\na,0,2\n", "line 2");
    fails_with("subject_id,replicate_index,value\na,1,2,3\n", "line 2");
    fails_with("subject_id,replicate_index,value\na,1,2\na,1,3\n", "duplicate");
    fails_with("subject_id,replicate_index,value\na,1,2\na,2,3\nlonely,1,3\n", "lonely");
    fails_with("subject_id,replicate_index,value\n", "no measurements");
    fails_with("", "missing header");
}

// ---------------------------------------------------------------------------
// samplesize-spec

TEST_CASE("samplesize-spec", "[cli]") {
    const auto r = invoke({"samplesize-spec", "--m", "2", "--psp", "0.95", "--esp-lb", "0.90", "--conf", "0.95"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.integer("n_exact") == 54);
    CHECK(r.label("n_exact") == "exact");
    CHECK_THAT(r.number("n_asymptotic_raw"), WithinAbs(52.3, 0.05));
    CHECK(r.label("n_asymptotic_raw") == "asymptotic");
    CHECK(r.integer("n_asymptotic") == 53);
    CHECK_THAT(r.number("expected_effective_specificity_exact"), WithinAbs(0.9448, 5e-4));
    CHECK(r.json()["inputs"] == Json::parse(R"({"m":2,"psp":0.95,"esp_lb":0.9,"conf":0.95})"));
    CHECK(r.json()["tool_version"] == tool_version());

    CHECK(invoke({"samplesize-spec", "--m", "3", "--psp", "0.95", "--esp-lb", "0.80", "--conf", "0.95"})
              .integer("n_exact") == 6);

    const auto infeasible = invoke({"samplesize-spec", "--esp-lb", "0.95", "--psp", "0.95"});
    CHECK(infeasible.code == kExitInfeasible);
    CHECK_THAT(infeasible.err, ContainsSubstring("infeasible"));
    CHECK(infeasible.out.empty());

    CHECK(invoke({"samplesize-spec", "--m", "two", "--esp-lb", "0.9"}).code == kExitUsage);
    CHECK(invoke({"samplesize-spec"}).code == kExitUsage);
    CHECK(invoke({"samplesize-spec", "--esp-lb", "0.9", "--bogus"}).code == kExitUsage);
    CHECK(invoke({"samplesize-spec", "--esp-lb", "1.5"}).code == kExitUsage);
    CHECK(invoke({"samplesize-spec", "--esp-lb", "0.9", "--m", "1"}).code == kExitUsage);
}

// ---------------------------------------------------------------------------
// samplesize-sens

TEST_CASE("samplesize-sens", "[cli]") {
    const auto r =
        invoke({"samplesize-sens", "--m", "2", "--psp", "0.95", "--delta", "4", "--ese-lb", "0.75", "--conf", "0.95"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.integer("n_asymptotic") == 139);
    CHECK_THAT(r.number("n_asymptotic_raw"), WithinAbs(138.1, 0.1));
    CHECK(r.integer("induced_at_n") == 139);
    CHECK_THAT(r.number("induced_specificity_lb_exact"), WithinAbs(0.9225, 5e-4));
    CHECK(r.label("induced_specificity_lb_exact") == "exact");
    CHECK_THAT(r.number("induced_specificity_lb_asymptotic"), WithinAbs(0.9227, 5e-4));
    CHECK_THAT(r.number("sensitivity_known_wsd"), WithinAbs(0.8074, 5e-4));
    CHECK(r.label("sensitivity_known_wsd") == "known_wsd");
    CHECK(r.number("confidence_at_induced_n") >= 0.95);
    // Minimal n on the chi-square form (brute-force scan in the sensitivity tests).
    CHECK(r.integer("n_exact") == 136);

    const auto zero = invoke({"samplesize-sens", "--delta", "0", "--ese-lb", "0.5"});
    CHECK(zero.code == kExitInfeasible);
    CHECK_THAT(zero.err, ContainsSubstring("p_se(delta=0)"));

    const auto by_change = invoke({"samplesize-sens", "--mu-delta", "2.0", "--wsd", "0.5", "--ese-lb", "0.75"});
    const auto by_delta = invoke({"samplesize-sens", "--delta", "4", "--ese-lb", "0.75"});
    REQUIRE(by_change.code == kExitOk);
    CHECK(by_change.json()["results"] == by_delta.json()["results"]);
    CHECK(by_change.json()["inputs"]["mu_delta"] == 2.0);

    const auto two = invoke({"samplesize-sens", "--delta", "4", "--ese-lb", "0.75", "--approximation", "two-sided"});
    REQUIRE(two.code == kExitOk);
    CHECK_FALSE(two.json()["results"].contains("n_asymptotic"));
    CHECK(two.integer("induced_at_n") == two.integer("n_exact"));
    CHECK(two.number("confidence_at_induced_n") >= 0.95);

    CHECK(invoke({"samplesize-sens", "--ese-lb", "0.75"}).code == kExitUsage);
    CHECK(invoke({"samplesize-sens", "--delta", "4", "--mu-delta", "2", "--wsd", "0.5", "--ese-lb", "0.75"}).code ==
          kExitUsage);
    CHECK(invoke({"samplesize-sens", "--mu-delta", "2", "--ese-lb", "0.75"}).code == kExitUsage);
    CHECK(invoke({"samplesize-sens", "--mu-delta", "2", "--wsd", "0", "--ese-lb", "0.75"}).code == kExitUsage);
}

// ---------------------------------------------------------------------------
// retro

TEST_CASE("retro", "[cli]") {
    const auto r = invoke({"retro", "--n", "35", "--m", "2", "--psp", "0.95", "--bound", "0.94", "--conf", "0.95"});
    REQUIRE(r.code == kExitOk);
    CHECK_THAT(r.number("probability_below[0.94]_exact"), WithinAbs(0.3974, 5e-4));
    CHECK(r.label("probability_below[0.94]_exact") == "exact");
    CHECK(r.label("probability_below[0.94]_asymptotic") == "asymptotic");

    CHECK_THAT(invoke({"retro", "--n", "10", "--m", "2", "--psp", "0.95", "--conf", "0.95"})
                   .number("specificity_lower_bound_exact"),
               WithinAbs(0.7814, 5e-4));
    CHECK_THAT(invoke({"retro", "--n", "20"}).number("specificity_lower_bound_exact"), WithinAbs(0.8512, 5e-4));
    CHECK(invoke({"retro", "--nu", "20"}).json()["results"] == invoke({"retro", "--n", "20", "--m", "2"}).json()["results"]);

    const auto sens = invoke({"retro", "--n", "139", "--delta", "4,0", "--bound", "0.9", "--bound", "0.93"});
    REQUIRE(sens.code == kExitOk);
    CHECK_THAT(sens.number("sensitivity[delta=4]_known_wsd"), WithinAbs(0.8074, 5e-4));
    CHECK(sens.json()["results"].contains("expected_effective_sensitivity[delta=0]_exact"));
    CHECK_FALSE(sens.json()["results"].contains("sensitivity_lower_bound[delta=0]_exact"));
    CHECK(sens.number("sensitivity_lower_bound[delta=4]_exact") < sens.number("sensitivity[delta=4]_known_wsd"));
    CHECK(sens.number("probability_below[0.9]_exact") < sens.number("probability_below[0.93]_exact"));

    CHECK(invoke({"retro", "--nu", "0"}).code == kExitUsage);
    CHECK(invoke({"retro", "--nu", "20", "--n", "20"}).code == kExitUsage);
    CHECK(invoke({"retro"}).code == kExitUsage);
    CHECK(invoke({"retro", "--n", "0"}).code == kExitUsage);
    const auto tiny = invoke({"retro", "--n", "5"});
    CHECK(tiny.code == kExitOk);
    CHECK(tiny.json()["warnings"].size() == 1);
}

// ---------------------------------------------------------------------------
// estimate

TEST_CASE("estimate", "[cli]") {
    const auto fixture = write_csv("fixture", kFixture);
    const auto r = invoke({"estimate", fixture.string()});
    REQUIRE(r.code == kExitOk);
    CHECK_THAT(r.number("wsd_hat"), WithinAbs(1.825741858, 1e-9));
    CHECK(r.label("wsd_hat") == "estimate");
    CHECK(r.integer("nu") == 3);
    // RC = Phi^{-1}(0.975) sqrt(2) w_hat
    CHECK_THAT(r.number("rc_hat"), WithinRel(1.959963984540054 * std::sqrt(2.0) * std::sqrt(10.0 / 3.0), 1e-9));
    CHECK_THAT(r.number("rc_hat"), WithinAbs(5.0609, 5e-4));
    for (const char* c : {"0.8", "0.9", "0.95"}) {
        const auto name = std::string("specificity_lower_bound[conf=") + c + "]_exact";
        CHECK_THAT(r.number(name), WithinAbs(specificity_lower_bound(DegreesOfFreedom(3), Probability(0.95),
                                                                     Probability(std::stod(c)), MethodChoice::Exact),
                                             1e-9));
    }
    CHECK(invoke({"estimate", "--input", fixture.string()}).json()["results"] == r.json()["results"]);

    const auto constant = invoke({"estimate", write_csv("constant", "subject_id,replicate_index,value\na,1,3\na,2,3\n"
                                                                 "b,1,7\nb,2,7\n")
                                               .string()});
    REQUIRE(constant.code == kExitOk);
    CHECK(constant.number("wsd_hat") == 0.0);
    CHECK(constant.number("rc_hat") == 0.0);
    bool zero_warning = false;
    const Json report = constant.json();
    for (const auto& w : report["warnings"]) zero_warning |= w.get<std::string>().find("zero") != std::string::npos;
    CHECK(zero_warning);

    const auto unequal = invoke({"estimate", write_csv("unequal", "subject_id,replicate_index,value\na,1,1\na,2,2\n"
                                                               "b,1,4\nb,2,6\nb,3,8\n")
                                              .string()});
    CHECK(unequal.integer("nu") == 3);
    CHECK_FALSE(unequal.json()["results"]["balanced"]["value"].get<bool>());

    const auto bad_value = invoke({"estimate", write_csv("bad", "subject_id,replicate_index,value\na,1,1\na,2,oops\n").string()});
    CHECK(bad_value.code == kExitData);
    CHECK_THAT(bad_value.err, ContainsSubstring("line 3"));
    const auto single = invoke({"estimate", write_csv("single", "subject_id,replicate_index,value\na,1,1\na,2,2\nz9,1,3\n").string()});
    CHECK(single.code == kExitData);
    CHECK_THAT(single.err, ContainsSubstring("z9"));
    CHECK(invoke({"estimate", write_csv("dup", "subject_id,replicate_index,value\na,1,1\na,1,2\n").string()}).code ==
          kExitData);
    CHECK(invoke({"estimate", "/definitely/not/here.csv"}).code == kExitData);
    CHECK(invoke({"estimate"}).code == kExitUsage);
}

// ---------------------------------------------------------------------------
// tables

TEST_CASE("tables default run matches the golden grids byte for byte", "[cli][golden]") {
    const auto dir = scratch_dir("tables");
    const auto r = invoke({"tables", "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.integer("populated_cells") == 504);
    for (int m = 2; m <= 5; ++m) {
        const auto name = "sample_sizes_m" + std::to_string(m);
        CHECK(slurp(dir / (name + ".csv")) == slurp(fs::path(REPEATKIT_GOLDEN_DIR) / (name + ".csv")));
        CHECK_THAT(slurp(dir / (name + ".md")), ContainsSubstring("| 0.800 | 0.700 |"));
    }
    const auto cell = [&](int m, const std::string& conf, const std::string& lb, const std::string& psp) {
        for (const auto& row : read_rows(dir / ("sample_sizes_m" + std::to_string(m) + ".csv")))
            if (row.at("p_conf") == conf && row.at("p_esp_lb") == lb) return row.at(psp);
        return std::string("missing");
    };
    CHECK(cell(2, "0.800", "0.700", "0.800") == "13");
    CHECK(cell(5, "0.990", "0.900", "0.950") == "26");
    CHECK(cell(2, "0.990", "0.925", "0.950") == "320");
    CHECK(cell(5, "0.800", "0.950", "0.975") == "7");
    CHECK(cell(3, "0.950", "0.950", "0.900") == "");
}

TEST_CASE("tables with custom lists", "[cli]") {
    const auto dir = scratch_dir("custom");
    const auto r = invoke({"tables", "--out", dir.string(), "--m-list", "3", "--conf-list", "0.95", "--esp-lb-list",
                        "0.9,0.8", "--psp-list", "0.95,0.9125"});
    REQUIRE(r.code == kExitOk);
    CHECK(slurp(dir / "sample_sizes_m3.csv") == "p_conf,p_esp_lb,0.950,0.9125\n0.950,0.900,27,487\n0.950,0.800,6,12\n");
    CHECK_FALSE(fs::exists(dir / "sample_sizes_m2.csv"));
    CHECK(invoke({"tables", "--out", dir.string(), "--m-list", "1"}).code == kExitUsage);
    CHECK(invoke({"tables", "--out", dir.string(), "--psp-list", "1.2"}).code == kExitUsage);
    CHECK(invoke({"tables"}).code == kExitUsage);
}

TEST_CASE("tables reports an unwritable output path", "[cli]") {
    const auto blocker = write_csv("blocker", "not a directory");
    const auto r = invoke({"tables", "--out", (blocker / "sub").string()});
    CHECK(r.code == kExitOutput);
    CHECK_THAT(r.err, ContainsSubstring("output"));
}

TEST_CASE("designs with equal nu give equal exact confidence", "[cli][property]") {
    for (std::int64_t k = 1; k <= 40; ++k) {
        const auto a = DegreesOfFreedom::from_design(2 * k, 2);
        const auto b = DegreesOfFreedom::from_design(k, 3);
        CHECK(specificity_confidence(a, Probability(0.95), Probability(0.9), MethodChoice::Exact) ==
              specificity_confidence(b, Probability(0.95), Probability(0.9), MethodChoice::Exact));
    }
}

// ---------------------------------------------------------------------------
// figure-data

TEST_CASE("figure-data", "[cli]") {
    const auto dir = scratch_dir("figures");
    for (const char* id : {"1", "2", "3a", "4a", "4b"}) {
        const auto r = invoke({"figure-data", "--figure", id, "--out", dir.string()});
        REQUIRE(r.code == kExitOk);
        const Json report = r.json();
        for (const auto& [name, entry] : report["results"].items()) {
            if (entry["unit"] == "path") CHECK(fs::file_size(entry["value"].get<std::string>()) > 100);
        }
    }

    for (const auto& row : read_rows(dir / "figure2.csv"))
        if (row.at("delta") == "4") CHECK_THAT(std::stod(row.at("sensitivity")), WithinAbs(0.8074, 5e-4));

    for (const auto& row : read_rows(dir / "figure1a.csv")) {
        if (row.at("n") == "30") CHECK(std::fabs(std::stod(row.at("bias_exact"))) < 0.01);
    }

    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    for (const auto& row : read_rows(dir / "figure1b.csv"))
        curves[row.at("n")].emplace_back(std::stod(row.at("p_esp")), std::stod(row.at("density")));
    REQUIRE(curves.size() == 3);
    for (const auto& [n, pts] : curves) {
        double mass = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            mass += 0.5 * (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second);
        INFO("n = " << n);
        CHECK_THAT(mass, WithinAbs(1.0, 1e-6));
    }

    const auto fig4b = invoke({"figure-data", "--figure", "4b", "--out", dir.string()});
    CHECK_THAT(fig4b.number("specificity_lower_bound_asymptotic"), WithinAbs(0.9227, 5e-4));
    CHECK_THAT(fig4b.number("effective_sensitivity_at_boundary"), WithinAbs(0.75, 2e-3));
    const auto rows = read_rows(dir / "figure4b.csv");
    double peak = 0.0, at = 0.0;
    for (const auto& row : rows) {
        const double pdf = std::stod(row.at("pdf_asymptotic"));
        if (pdf > peak) peak = pdf, at = std::stod(row.at("relative_error"));
    }
    CHECK(std::fabs(at) < 0.01);

    CHECK(invoke({"figure-data", "--figure", "5", "--out", dir.string()}).code == kExitUsage);
    CHECK(invoke({"figure-data", "--figure", "2"}).code == kExitUsage);
}

// ---------------------------------------------------------------------------
// simulate

TEST_CASE("simulate matches the analytic specificity at n = 54", "[cli][statistical]") {
    const auto r = invoke({"simulate", "--n", "54", "--m", "2", "--psp", "0.95", "--replicates", "100000", "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.label("p_esp_mean") == "monte_carlo");
    CHECK(std::fabs(r.number("p_esp_mean") - 0.9448) <= 3.0 * r.number("p_esp_mean_se"));
    CHECK(r.json()["results"]["expected_effective_specificity_within_3se"]["value"].get<bool>());
    CHECK_FALSE(r.json()["results"].contains("p_ese_mean"));
}

TEST_CASE("simulate is byte-for-byte reproducible", "[cli]") {
    const std::vector<std::string> args{"simulate", "--n", "20", "--replicates", "5000", "--seed", "3", "--delta", "2"};
    const auto a = invoke(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == invoke(args).out);
    std::vector<std::string> other = args;
    other[6] = "4";
    CHECK(a.out != invoke(other).out);
}

TEST_CASE("simulate the sensitivity design at n = 139", "[cli][statistical]") {
    const auto r = invoke({"simulate", "--n", "139", "--delta", "4", "--replicates", "100000", "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.number("p_ese_quantile[0.05]") >= 0.75 - 3.0 * r.number("p_ese_quantile_se[0.05]"));
    CHECK(r.json()["results"]["expected_effective_sensitivity_within_3se"]["value"].get<bool>());
}

TEST_CASE("simulate rejects bad flags", "[cli]") {
    CHECK(invoke({"simulate", "--replicates", "0"}).code == kExitUsage);
    CHECK(invoke({"simulate", "--replicates", "-5"}).code == kExitUsage);
    CHECK(invoke({"simulate", "--m", "1"}).code == kExitUsage);
}

// ---------------------------------------------------------------------------
// Cross-cutting

TEST_CASE("every subcommand supports every output format", "[cli]") {
    const auto fixture = write_csv("formats", kFixture);
    const auto dir = scratch_dir("formats");
    const std::vector<std::vector<std::string>> commands{
        {"samplesize-spec", "--esp-lb", "0.9"},
        {"samplesize-sens", "--delta", "4", "--ese-lb", "0.75"},
        {"retro", "--n", "10", "--bound", "0.9", "--delta", "3"},
        {"estimate", fixture.string()},
        {"tables", "--out", dir.string(), "--m-list", "2", "--conf-list", "0.95"},
        {"figure-data", "--figure", "2", "--out", dir.string()},
        {"simulate", "--n", "10", "--replicates", "500", "--delta", "3"},
    };
    for (const auto& base : commands) {
        INFO(base.front());
        const auto json = invoke(base);
        REQUIRE(json.code == kExitOk);
        const Json parsed = json.json();
        CHECK(parsed["command"] == base.front());
        CHECK(to_json(from_json(parsed)).dump(2) + "\n" == json.out);
        CHECK_FALSE(parsed["inputs"].empty());
        for (const auto& [name, entry] : parsed["results"].items()) {
            const std::string label = entry["label"];
            CHECK((label == "exact" || label == "asymptotic" || label == "known_wsd" || label == "estimate" ||
                   label == "monte_carlo"));
        }
        auto csv_args = base;
        csv_args.insert(csv_args.end(), {"--format", "csv"});
        const auto csv = invoke(csv_args);
        CHECK(csv.code == kExitOk);
        CHECK(csv.out.rfind("kind,name,value,unit,label\ninput,", 0) == 0);
        auto table_args = base;
        table_args.insert(table_args.end(), {"--format", "table"});
        const auto table = invoke(table_args);
        CHECK(table.code == kExitOk);
        CHECK(table.out.rfind(base.front() + " (repeatkit ", 0) == 0);
        auto bad = base;
        bad.insert(bad.end(), {"--format", "xml"});
        CHECK(invoke(bad).code == kExitUsage);
    }
}

TEST_CASE("help, version and unknown subcommands", "[cli]") {
    const auto help = invoke({"--help"});
    CHECK(help.code == kExitOk);
    CHECK_THAT(help.out, ContainsSubstring("samplesize-spec"));
    CHECK(invoke({"samplesize-sens", "--help"}).code == kExitOk);
    const auto version = invoke({"--version"});
    CHECK(version.code == kExitOk);
    CHECK_THAT(version.out, ContainsSubstring(tool_version()));
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"plan"}).code == kExitUsage);
}

#ifdef REPEATKIT_CLI_PATH
TEST_CASE("the installed binary forwards exit codes", "[cli][process]") {
    const auto status = [](const std::string& args) {
        const std::string command = std::string(REPEATKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        const int raw = std::system(command.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("samplesize-spec --esp-lb 0.9") == 0);
    CHECK(status("samplesize-spec --esp-lb 0.95 --psp 0.95") == 2);
    CHECK(status("samplesize-spec --esp-lb nope") == 64);
    CHECK(status("estimate /definitely/not/here.csv") == 65);
    CHECK(status("retro --nu 0") == 64);
}
#endif
