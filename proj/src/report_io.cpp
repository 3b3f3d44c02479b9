#include "hcsp/report_io.hpp"

#include <fstream>
#include <sstream>

namespace hcsp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void write_front_csv(const std::filesystem::path& path,
                     const ParetoArchive<EvaluatedSolution>& archive,
                     const std::vector<std::string>& solution_files) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write front CSV: " + path.string());
  os << "f1,f2,affinity_sum,penalization_sum,overtime_sum,solution_file\n";
  for (std::size_t i = 0; i < archive.entries().size(); ++i) {
    const auto& e = archive.entries()[i];
    const EvaluatedSolution& sol = e.payload;
    std::int64_t affinity = 0, penalty = 0, overtime = 0;
    const Instance& inst = sol.instance();
    for (int cg = 1; cg <= inst.num_caregivers(); ++cg) {
      overtime += sol.overtime(cg);
      for (int d = 1; d <= kDaysPerWeek; ++d) {
        affinity += sol.metrics(cg, d).affinity;
        penalty += sol.metrics(cg, d).penalty;
      }
    }
    os << e.objectives.cost << ',' << e.objectives.welfare << ',' << affinity << ',' << penalty
       << ',' << overtime << ',' << (i < solution_files.size() ? solution_files[i] : "") << "\n";
  }
  if (!os) throw std::runtime_error("I/O failure writing " + path.string());
}

std::vector<Point2> read_front_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open front CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty front CSV: " + path.string());
  const auto header = split_csv_line(line);
  int col_f1 = -1, col_f2 = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "f1") col_f1 = static_cast<int>(i);
    if (header[i] == "f2") col_f2 = static_cast<int>(i);
  }
  if (col_f1 < 0 || col_f2 < 0)
    throw std::runtime_error("front CSV missing f1/f2 columns: " + path.string());

  std::vector<Point2> points;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) <= std::max(col_f1, col_f2))
      throw std::runtime_error("malformed row " + std::to_string(lineno) + " in " +
                               path.string());
    try {
      points.push_back(Point2{std::stod(fields[static_cast<std::size_t>(col_f1)]),
                              std::stod(fields[static_cast<std::size_t>(col_f2)])});
    } catch (const std::exception&) {
      throw std::runtime_error("malformed number in row " + std::to_string(lineno) + " of " +
                               path.string());
    }
  }
  return points;
}

void write_indicator_report(const std::filesystem::path& path,
                            const std::vector<std::string>& labels,
                            const std::vector<FrontReport>& reports) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write indicator report: " + path.string());
  os << "method,CV,EPS,GD,IGD,EPS_raw,GD_raw,IGD_raw,front_size,reference_size\n";
  os.precision(12);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const FrontReport& r = reports[i];
    os << labels[i] << ',' << r.cv << ',' << r.eps << ',' << r.gd << ',' << r.igd << ','
       << r.eps_raw << ',' << r.gd_raw << ',' << r.igd_raw << ',' << r.approx_size << ','
       << r.reference_size << "\n";
  }
}

void write_plot_data(const std::filesystem::path& path, const std::vector<Point2>& points) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write plot data: " + path.string());
  os << "f1,f2\n";
  os.precision(12);
  for (const Point2& p : points) os << p[0] << ',' << p[1] << "\n";
}

}  // namespace hcsp
