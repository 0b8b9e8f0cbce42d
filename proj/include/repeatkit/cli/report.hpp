#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace repeatkit::cli {

using Json = nlohmann::ordered_json;

/// How a number was obtained.
enum class ResultLabel { Exact, Asymptotic, KnownWsd, Estimate, MonteCarlo };

std::string_view to_string(ResultLabel label);
ResultLabel result_label_from_string(std::string_view text);

using ResultValue = std::variant<std::int64_t, double, bool, std::string>;

struct ResultEntry {
    std::string name;
    ResultValue value;
    /// "probability" values also render as percentages in table mode.
    std::string unit;
    ResultLabel label = ResultLabel::Exact;
};

struct ReportEnvelope {
    std::string command;
    Json inputs = Json::object();
    std::vector<std::string> methods;
    std::vector<ResultEntry> results;
    std::vector<std::string> warnings;
    std::string tool_version;

    void add(std::string name, ResultValue value, std::string unit, ResultLabel label);
    /// Removes repeated method names while keeping first-seen order.
    void add_method(std::string_view method);
    const ResultEntry* find(std::string_view name) const;
};

enum class OutputFormat { Json, Csv, Table };

OutputFormat output_format_from_string(std::string_view text);

/// Rounds to 10 significant digits; the shortest round-trip form of the
/// result has at most 10 digits.
double round_significant(double value, int digits = 10);

std::string tool_version();

Json to_json(const ReportEnvelope& report);
/// Inverse of to_json. Throws std::invalid_argument on schema violations.
ReportEnvelope from_json(const Json& json);

void render(std::ostream& out, const ReportEnvelope& report, OutputFormat format);

}  // namespace repeatkit::cli
