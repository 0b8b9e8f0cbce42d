#include "repeatkit/cli/measurements.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <string_view>
#include <utility>

#include <fmt/format.h>

namespace repeatkit::cli {

namespace {

constexpr std::string_view kHeader = "subject_id,replicate_index,value";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) return fields;
        start = comma + 1;
    }
}

template <class T>
bool parse_whole(std::string_view text, T& out) {
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && end == text.data() + text.size();
}

}  // namespace

std::vector<MeasurementRecord> read_measurements(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<MeasurementRecord> records;
    std::set<std::pair<std::string, std::int64_t>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (line_no == 1 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != kHeader)
                throw ValidationError(fmt::format("line {}: expected header '{}'", line_no, kHeader));
            header_seen = true;
            continue;
        }
        const auto fields = split(text);
        if (fields.size() != 3)
            throw ValidationError(fmt::format("line {}: expected 3 fields, found {}", line_no, fields.size()));
        MeasurementRecord record;
        record.subject_id = std::string(fields[0]);
        if (record.subject_id.empty()) throw ValidationError(fmt::format("line {}: empty subject_id", line_no));
        if (!parse_whole(fields[1], record.replicate_index) || record.replicate_index < 1)
            throw ValidationError(
                fmt::format("line {}: replicate_index '{}' is not a positive integer", line_no, fields[1]));
        if (!parse_whole(fields[2], record.value) || !std::isfinite(record.value))
            throw ValidationError(fmt::format("line {}: value '{}' is not a finite number", line_no, fields[2]));
        if (!seen.emplace(record.subject_id, record.replicate_index).second)
            throw ValidationError(fmt::format("line {}: duplicate measurement for subject '{}' replicate {}", line_no,
                                              record.subject_id, record.replicate_index));
        records.push_back(std::move(record));
    }
    if (!header_seen) throw ValidationError(fmt::format("missing header '{}'", kHeader));
    if (records.empty()) throw ValidationError("no measurements after the header");
    return records;
}

TestRetestData to_test_retest_data(const std::vector<MeasurementRecord>& records) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<std::int64_t, double>>> by_subject;
    for (const auto& r : records) {
        auto [it, inserted] = by_subject.try_emplace(r.subject_id);
        if (inserted) order.push_back(r.subject_id);
        it->second.emplace_back(r.replicate_index, r.value);
    }
    std::vector<SubjectMeasurements> subjects;
    subjects.reserve(order.size());
    for (const auto& id : order) {
        auto& reps = by_subject[id];
        std::sort(reps.begin(), reps.end());
        SubjectMeasurements s{id, {}};
        for (const auto& [index, value] : reps) s.measurements.push_back(value);
        subjects.push_back(std::move(s));
    }
    return TestRetestData(std::move(subjects));
}

}  // namespace repeatkit::cli
