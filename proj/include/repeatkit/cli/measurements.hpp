#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "repeatkit/core.hpp"

namespace repeatkit::cli {

struct MeasurementRecord {
    std::string subject_id;
    std::int64_t replicate_index = 1;
    double value = 0.0;
};

/// Reads `subject_id,replicate_index,value` rows after a mandatory header.
/// Throws ValidationError with the 1-based line number on malformed rows and
/// on a repeated (subject_id, replicate_index) pair.
std::vector<MeasurementRecord> read_measurements(std::istream& in);

/// Groups records by subject in order of first appearance, replicates sorted
/// by index. Throws ValidationError naming any subject with one replicate.
TestRetestData to_test_retest_data(const std::vector<MeasurementRecord>& records);

}  // namespace repeatkit::cli
