#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hcsp/archive.hpp"
#include "hcsp/indicators.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

// front.csv: one row per archive entry, cost ascending. solution_file paths
// are relative so that identical runs produce identical bytes.
void write_front_csv(const std::filesystem::path& path,
                     const ParetoArchive<EvaluatedSolution>& archive,
                     const std::vector<std::string>& solution_files);

// Reads the (f1, f2) columns back out of a front CSV.
std::vector<Point2> read_front_points(const std::filesystem::path& path);

// Indicator report: one row per front, both normalized and raw values.
void write_indicator_report(const std::filesystem::path& path,
                            const std::vector<std::string>& labels,
                            const std::vector<FrontReport>& reports);

// Scatter data for front plots: f1,f2 rows.
void write_plot_data(const std::filesystem::path& path, const std::vector<Point2>& points);

}  // namespace hcsp
