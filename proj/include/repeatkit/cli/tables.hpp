#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repeatkit::cli {

/// Parameter lists of an exact specificity sample-size grid. The defaults
/// are the published supplementary grids.
struct TableSpec {
    std::vector<std::int64_t> m_list{2, 3, 4, 5};
    std::vector<double> conf_list{0.8, 0.9, 0.925, 0.95, 0.975, 0.99};
    std::vector<double> esp_lb_list{0.7, 0.8, 0.9, 0.925, 0.95, 0.975};
    std::vector<double> psp_list{0.8, 0.9, 0.925, 0.95, 0.975, 0.99};
};

/// One grid for a fixed m. Rows are (conf, lb) pairs in list order, columns
/// follow psp_list; a cell is empty when lb >= psp.
struct SampleSizeGrid {
    std::int64_t m = 2;
    TableSpec spec;
    std::vector<std::vector<std::optional<std::int64_t>>> cells;

    std::size_t populated() const;
};

SampleSizeGrid compute_grid(std::int64_t m, const TableSpec& spec);

/// Header `p_conf,p_esp_lb,<psp...>`; probabilities with at least 3 decimals.
std::string grid_csv(const SampleSizeGrid& grid);
std::string grid_markdown(const SampleSizeGrid& grid);

/// Probability label with at least 3 decimals and as many as needed to round-trip.
std::string probability_label(double p);

}  // namespace repeatkit::cli
