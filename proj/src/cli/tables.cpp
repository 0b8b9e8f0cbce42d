#include "repeatkit/cli/tables.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "repeatkit/parallel.hpp"
#include "repeatkit/specificity.hpp"

namespace repeatkit::cli {

std::size_t SampleSizeGrid::populated() const {
    std::size_t count = 0;
    for (const auto& row : cells)
        for (const auto& cell : row) count += cell.has_value();
    return count;
}

SampleSizeGrid compute_grid(std::int64_t m, const TableSpec& spec) {
    SampleSizeGrid grid{m, spec, {}};
    const std::size_t rows = spec.conf_list.size() * spec.esp_lb_list.size();
    const std::size_t cols = spec.psp_list.size();
    grid.cells.assign(rows, std::vector<std::optional<std::int64_t>>(cols));
    parallel_for(rows * cols, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const std::size_t row = k / cols, col = k % cols;
            const double conf = spec.conf_list[row / spec.esp_lb_list.size()];
            const double lb = spec.esp_lb_list[row % spec.esp_lb_list.size()];
            const double psp = spec.psp_list[col];
            if (lb >= psp) continue;
            grid.cells[row][col] =
                sample_size_specificity(m, Probability(psp), Probability(lb), Probability(conf), MethodChoice::Exact).n;
        }
    });
    return grid;
}

std::string probability_label(double p) {
    for (int decimals = 3; decimals < 17; ++decimals) {
        std::string text = fmt::format("{:.{}f}", p, decimals);
        if (std::strtod(text.c_str(), nullptr) == p) return text;
    }
    return fmt::format("{}", p);
}

std::string grid_csv(const SampleSizeGrid& grid) {
    std::string out = "p_conf,p_esp_lb";
    for (double psp : grid.spec.psp_list) out += "," + probability_label(psp);
    out += '\n';
    const std::size_t lbs = grid.spec.esp_lb_list.size();
    for (std::size_t row = 0; row < grid.cells.size(); ++row) {
        out += probability_label(grid.spec.conf_list[row / lbs]) + "," + probability_label(grid.spec.esp_lb_list[row % lbs]);
        for (const auto& cell : grid.cells[row]) out += "," + (cell ? std::to_string(*cell) : std::string());
        out += '\n';
    }
    return out;
}

std::string grid_markdown(const SampleSizeGrid& grid) {
    std::string out = fmt::format("Exact sample sizes n for m = {} (columns: p_sp)\n\n| p_conf | p_esp_lb |", grid.m);
    for (double psp : grid.spec.psp_list) out += " " + probability_label(psp) + " |";
    out += "\n|---|---|";
    for (std::size_t i = 0; i < grid.spec.psp_list.size(); ++i) out += "---:|";
    out += '\n';
    const std::size_t lbs = grid.spec.esp_lb_list.size();
    for (std::size_t row = 0; row < grid.cells.size(); ++row) {
        out += "| " + probability_label(grid.spec.conf_list[row / lbs]) + " | " +
               probability_label(grid.spec.esp_lb_list[row % lbs]) + " |";
        for (const auto& cell : grid.cells[row]) out += " " + (cell ? std::to_string(*cell) : std::string()) + " |";
        out += '\n';
    }
    return out;
}

}  // namespace repeatkit::cli
