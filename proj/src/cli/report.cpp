#include "repeatkit/cli/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace repeatkit::cli {

namespace {

constexpr std::array<std::pair<ResultLabel, std::string_view>, 5> kLabels{{
    {ResultLabel::Exact, "exact"},
    {ResultLabel::Asymptotic, "asymptotic"},
    {ResultLabel::KnownWsd, "known_wsd"},
    {ResultLabel::Estimate, "estimate"},
    {ResultLabel::MonteCarlo, "monte_carlo"},
}};

std::string format_number(double v) { return fmt::format("{:.10g}", v); }

std::string value_text(const ResultValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        value);
}

std::string input_text(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_float()) return format_number(value.get<double>());
    if (value.is_array()) {
        std::string out;
        for (const auto& item : value) {
            if (!out.empty()) out += ';';
            out += input_text(item);
        }
        return out;
    }
    return value.dump();
}

Json rounded(const Json& value) {
    if (value.is_number_float()) return round_significant(value.get<double>());
    if (value.is_array() || value.is_object()) {
        Json copy = value;
        for (auto& item : copy) item = rounded(item);
        return copy;
    }
    return value;
}

Json value_json(const ResultValue& value) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? Json(round_significant(v)) : Json(nullptr);
            else return Json(v);
        },
        value);
}

ResultValue value_from_json(const Json& value) {
    if (value.is_boolean()) return value.get<bool>();
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number_float()) return value.get<double>();
    if (value.is_null()) return std::nan("");
    if (value.is_string()) return value.get<std::string>();
    throw std::invalid_argument("result value must be a number, boolean or string");
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

const Json& required(const Json& json, const char* key) {
    if (!json.contains(key)) throw std::invalid_argument(fmt::format("report is missing '{}'", key));
    return json.at(key);
}

}  // namespace

std::string_view to_string(ResultLabel label) {
    for (const auto& [l, text] : kLabels)
        if (l == label) return text;
    return "exact";
}

ResultLabel result_label_from_string(std::string_view text) {
    for (const auto& [l, name] : kLabels)
        if (name == text) return l;
    throw std::invalid_argument(fmt::format("unknown result label '{}'", text));
}

void ReportEnvelope::add(std::string name, ResultValue value, std::string unit, ResultLabel label) {
    results.push_back({std::move(name), std::move(value), std::move(unit), label});
}

void ReportEnvelope::add_method(std::string_view method) {
    if (std::find(methods.begin(), methods.end(), method) == methods.end()) methods.emplace_back(method);
}

const ResultEntry* ReportEnvelope::find(std::string_view name) const {
    for (const auto& entry : results)
        if (entry.name == name) return &entry;
    return nullptr;
}

OutputFormat output_format_from_string(std::string_view text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "table") return OutputFormat::Table;
    throw std::invalid_argument(fmt::format("unknown output format '{}'", text));
}

double round_significant(double value, int digits) {
    if (!std::isfinite(value) || value == 0.0) return value;
    return std::strtod(fmt::format("{:.{}g}", value, digits).c_str(), nullptr);
}

std::string tool_version() { return REPEATKIT_VERSION; }

Json to_json(const ReportEnvelope& report) {
    Json json;
    json["command"] = report.command;
    json["tool_version"] = report.tool_version;
    json["inputs"] = rounded(report.inputs);
    json["methods"] = report.methods;
    Json results = Json::object();
    for (const auto& entry : report.results) {
        results[entry.name] = {{"value", value_json(entry.value)}, {"unit", entry.unit}, {"label", to_string(entry.label)}};
    }
    json["results"] = std::move(results);
    json["warnings"] = report.warnings;
    return json;
}

ReportEnvelope from_json(const Json& json) {
    if (!json.is_object()) throw std::invalid_argument("report must be a JSON object");
    ReportEnvelope report;
    report.command = required(json, "command").get<std::string>();
    report.tool_version = required(json, "tool_version").get<std::string>();
    report.inputs = required(json, "inputs");
    if (!report.inputs.is_object()) throw std::invalid_argument("'inputs' must be an object");
    report.methods = required(json, "methods").get<std::vector<std::string>>();
    for (const auto& [name, entry] : required(json, "results").items()) {
        report.add(name, value_from_json(required(entry, "value")), required(entry, "unit").get<std::string>(),
                   result_label_from_string(required(entry, "label").get<std::string>()));
    }
    report.warnings = required(json, "warnings").get<std::vector<std::string>>();
    return report;
}

void render(std::ostream& out, const ReportEnvelope& report, OutputFormat format) {
    switch (format) {
    case OutputFormat::Json:
        out << to_json(report).dump(2) << '\n';
        return;
    case OutputFormat::Csv:
        out << "kind,name,value,unit,label\n";
        for (const auto& [key, value] : report.inputs.items())
            out << "input," << csv_field(key) << ',' << csv_field(input_text(value)) << ",,\n";
        for (const auto& entry : report.results) {
            out << "result," << csv_field(entry.name) << ',' << csv_field(value_text(entry.value)) << ','
                << csv_field(entry.unit) << ',' << to_string(entry.label) << '\n';
        }
        for (const auto& warning : report.warnings) out << "warning,," << csv_field(warning) << ",,\n";
        return;
    case OutputFormat::Table: {
        std::size_t width = 4;
        for (const auto& [key, value] : report.inputs.items()) width = std::max(width, key.size());
        for (const auto& entry : report.results) width = std::max(width, entry.name.size());
        out << fmt::format("{} (repeatkit {})\n", report.command, report.tool_version);
        out << "inputs\n";
        for (const auto& [key, value] : report.inputs.items())
            out << fmt::format("  {:<{}}  {}\n", key, width, input_text(value));
        if (!report.methods.empty()) {
            std::string joined;
            for (const auto& m : report.methods) joined += (joined.empty() ? "" : ", ") + m;
            out << "methods: " << joined << '\n';
        }
        out << "results\n";
        for (const auto& entry : report.results) {
            std::string shown = value_text(entry.value);
            if (entry.unit == "probability" && std::holds_alternative<double>(entry.value))
                shown += fmt::format(" ({:.2f}%)", 100.0 * std::get<double>(entry.value));
            out << fmt::format("  {:<{}}  {:<24}  {:<18}  {}\n", entry.name, width, shown, entry.unit,
                               to_string(entry.label));
        }
        if (!report.warnings.empty()) {
            out << "warnings\n";
            for (const auto& warning : report.warnings) out << "  - " << warning << '\n';
        }
        return;
    }
    }
}

}  // namespace repeatkit::cli
