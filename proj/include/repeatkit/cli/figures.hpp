#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "repeatkit/cli/report.hpp"

namespace repeatkit::cli {

struct FigureFile {
    std::string filename;
    std::string csv;
};

/// Plot-ready point sets plus a few marker values for the report.
struct FigureData {
    std::vector<FigureFile> files;
    std::vector<ResultEntry> markers;
};

/// Known figure ids: 1, 2, 3a, 4a, 4b.
const std::vector<std::string>& figure_ids();

/// Throws std::invalid_argument for an unknown id.
FigureData figure_data(std::string_view id, double p_sp = 0.95);

}  // namespace repeatkit::cli
